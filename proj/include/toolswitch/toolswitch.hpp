#pragma once

#include "toolswitch/bench.hpp"
#include "toolswitch/evaluator.hpp"
#include "toolswitch/generator.hpp"
#include "toolswitch/instance.hpp"
#include "toolswitch/instance_io.hpp"
#include "toolswitch/ktns.hpp"
#include "toolswitch/mpca.hpp"
#include "toolswitch/next_needed.hpp"
#include "toolswitch/oracle.hpp"
#include "toolswitch/range_union.hpp"
#include "toolswitch/results_csv.hpp"
#include "toolswitch/solver.hpp"
#include "toolswitch/tool_set.hpp"
#include "toolswitch/verify.hpp"
