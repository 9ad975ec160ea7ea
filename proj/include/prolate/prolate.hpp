#pragma once

#include "prolate/error.hpp"
#include "prolate/hardy.hpp"
#include "prolate/lemma_checks.hpp"
#include "prolate/limiting_operators.hpp"
#include "prolate/line_grid.hpp"
#include "prolate/prolate_spectrum.hpp"
#include "prolate/quadrature.hpp"
#include "prolate/sinc_kernel.hpp"
#include "prolate/sum_spectrum.hpp"
