#pragma once
// Umbrella header.

#include "jk/scalar.hpp"
#include "jk/matrix.hpp"
#include "jk/poly.hpp"
#include "jk/algebra.hpp"
#include "jk/spectral.hpp"
#include "jk/tkk.hpp"
#include "jk/report.hpp"
#include "jk/phase_space.hpp"
#include "jk/weyl.hpp"
#include "jk/cone.hpp"
#include "jk/measure.hpp"
#include "jk/degeneracy.hpp"
#include "jk/suites.hpp"
#include "jk/workbench.hpp"
