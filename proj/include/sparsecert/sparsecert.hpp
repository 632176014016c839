#pragma once

// Umbrella header.

#include "sparsecert/asf.hpp"
#include "sparsecert/bounds.hpp"
#include "sparsecert/generate.hpp"
#include "sparsecert/io.hpp"
#include "sparsecert/jacobi.hpp"
#include "sparsecert/lp.hpp"
#include "sparsecert/matrix.hpp"
#include "sparsecert/oracle.hpp"
#include "sparsecert/types.hpp"
