#pragma once

#include "fpcount/approx_float.hpp"
#include "fpcount/bigint.hpp"
#include "fpcount/count_table.hpp"
#include "fpcount/dag_counting.hpp"
#include "fpcount/dag_generation.hpp"
#include "fpcount/enumerate.hpp"
#include "fpcount/instances.hpp"
#include "fpcount/knapsack.hpp"
#include "fpcount/labeled_dag.hpp"
#include "fpcount/mantissa.hpp"
#include "fpcount/path_fptas.hpp"
#include "fpcount/random_source.hpp"
#include "fpcount/recurrences.hpp"
#include "fpcount/sampling.hpp"
