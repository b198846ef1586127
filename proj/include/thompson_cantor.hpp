#pragma once

#include "thompson_cantor/exact_num.hpp"
#include "thompson_cantor/words.hpp"
#include "thompson_cantor/cantor_model.hpp"
#include "thompson_cantor/tree_calculus.hpp"
#include "thompson_cantor/pl_action.hpp"
#include "thompson_cantor/nv_patterns.hpp"
#include "thompson_cantor/io.hpp"
#include "thompson_cantor/svg.hpp"
