#pragma once

#include "atmet/channel.hpp"
#include "atmet/decomposition.hpp"
#include "atmet/error.hpp"
#include "atmet/ext_real.hpp"
#include "atmet/function_semantics.hpp"
#include "atmet/iso.hpp"
#include "atmet/matrix_semantics.hpp"
#include "atmet/oracle.hpp"
#include "atmet/random.hpp"
#include "atmet/semiring.hpp"
#include "atmet/signature.hpp"
#include "atmet/term_graph.hpp"
