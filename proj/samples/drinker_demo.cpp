// Walks the drinker sequent through reduction, grammar extraction and
// Skolemization.
#include <iostream>

#include "hcont/hcont.hpp"

using namespace hcont;

namespace {

const char* kDrinkerWithCut = R"(
(cont
  (cut
    (ex
      (or
        (all
          (weak
            (ex (ax P(β)) 1 β (ex z ~P(z)))
            ~P(c))
          0 β (all y P(y)))
        1 2)
      1 c (ex x (or ~P(x) (all y P(y)))))
    (all
      (ex
        (or (weak (ax P(γ)) (all y P(y))) 1 2)
        1 γ (ex x (or ~P(x) (all y P(y)))))
      0 γ (all z P(z)))
    0 1)
  0 1)
)";

void print_set(const char* title, const FormulaSet& fs) {
  std::cout << title << "\n";
  for (const auto& s : sorted_strings(fs)) std::cout << "  " << s << "\n";
}

}  // namespace

int main() {
  Proof p = parse_proof(kDrinkerWithCut);
  std::cout << "end-sequent: " << to_string(p->conclusion[0]) << "\n\n";

  Grammar g = extract_grammar(p);
  std::cout << "grammar:\n" << print_grammar(g) << "\n";
  print_set("language:", decode_language(compute_language(g)));

  auto sk = skolemize_proof(p);
  std::cout << "\nSkolem symbols:\n";
  for (const auto& s : sk.map.symbols) std::cout << "  " << s.name << " for <" << s.i << "," << s.j << ">\n";

  FormulaSet content = herbrand_content(p);
  print_set("\nHerbrand-content:", content);
  auto check = is_herbrand_disjunction(p->conclusion, content);
  std::cout << "Herbrand-disjunction: " << check.reason() << "\n\n";

  Proof nf;
  for (auto pol : {Policy::LeftmostInnermost, Policy::RightmostUppermost}) {
    Strategy s;
    s.policy = pol;
    auto r = reduce(p, s, Mode::NonErasing);
    nf = r.proof;
    std::cout << to_string(pol) << ": " << r.trace.steps.size() << " steps, normal form "
              << proof_hash(r.proof) << (normal_form_content(r.proof) == content ? ", same content\n" : ", different content\n");
  }

  InstanceSet inst = instances_of(nf);
  std::cout << "\ninstances of the normal form:\n";
  for (const auto& in : inst.instances[0]) {
    std::cout << "  " << to_string(in.formula) << "  terms:";
    for (const auto& t : in.terms) std::cout << " " << (t ? to_string(*t) : "-");
    std::cout << "\n";
  }
  auto dep = dependency(inst);
  std::cout << "dependencies among existential positions:\n";
  for (const auto& [a, b] : dep.prec) std::cout << "  " << to_string(a) << " before " << to_string(b) << "\n";
}
