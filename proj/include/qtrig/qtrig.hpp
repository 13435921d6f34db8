#pragma once

#include "qtrig/basis.hpp"
#include "qtrig/curve.hpp"
#include "qtrig/errors.hpp"
#include "qtrig/kernel.hpp"
#include "qtrig/qcalculus.hpp"
#include "qtrig/rational.hpp"
#include "qtrig/shape.hpp"
#include "qtrig/types.hpp"
