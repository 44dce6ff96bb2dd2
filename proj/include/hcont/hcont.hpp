#pragma once

#include "hcont/term.hpp"
#include "hcont/formula.hpp"
#include "hcont/syntax.hpp"
#include "hcont/tautology.hpp"
#include "hcont/proof.hpp"
#include "hcont/proof_io.hpp"
#include "hcont/reduction.hpp"
#include "hcont/grammar.hpp"
#include "hcont/grammar_io.hpp"
#include "hcont/extraction.hpp"
#include "hcont/herbrand.hpp"
#include "hcont/generate.hpp"
#include "hcont/confluence.hpp"
#include "hcont/pipeline.hpp"
