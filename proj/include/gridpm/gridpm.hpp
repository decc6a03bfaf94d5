#pragma once

// Toolkit for realizing barcodes as restrictions of indecomposable grid
// persistence modules, with machine checks for every construction step:
// endomorphism-ring dimensions, restriction isomorphisms, and Betti numbers
// of support complexes.

#include "gridpm/barcode.hpp"
#include "gridpm/construction.hpp"
#include "gridpm/endomorphism.hpp"
#include "gridpm/field.hpp"
#include "gridpm/geometry.hpp"
#include "gridpm/grid_module.hpp"
#include "gridpm/homology.hpp"
#include "gridpm/io.hpp"
#include "gridpm/matrix.hpp"
#include "gridpm/rect_matrix.hpp"
#include "gridpm/render.hpp"
#include "gridpm/rng.hpp"
