#pragma once

#include "gpd/complex.hpp"
#include "gpd/diagrams.hpp"
#include "gpd/filtration.hpp"
#include "gpd/harmonic.hpp"
#include "gpd/invariants.hpp"
#include "gpd/inversion.hpp"
#include "gpd/io.hpp"
#include "gpd/parallel.hpp"
#include "gpd/poset.hpp"
#include "gpd/segment_diagram.hpp"
#include "gpd/subspace.hpp"
#include "gpd/treegram.hpp"
