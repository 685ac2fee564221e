#pragma once

#include "antichain/cycle_lemma.hpp"
#include "antichain/errors.hpp"
#include "antichain/family_builder.hpp"
#include "antichain/growth_function.hpp"
#include "antichain/height_column.hpp"
#include "antichain/interval.hpp"
#include "antichain/lattice_path.hpp"
#include "antichain/numeric.hpp"
#include "antichain/path_counter.hpp"
#include "antichain/prefix_kraft.hpp"
#include "antichain/subset_mask.hpp"
#include "antichain/verdict.hpp"
#include "antichain/walk_bounds.hpp"
