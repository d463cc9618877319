#pragma once

#include "weil/cyclotomic.hpp"
#include "weil/fp.hpp"
#include "weil/symplectic.hpp"
#include "weil/cyc_matrix.hpp"
#include "weil/heisenberg.hpp"
#include "weil/intertwine.hpp"
#include "weil/canonical.hpp"
#include "weil/io.hpp"
#include "weil/verify.hpp"
