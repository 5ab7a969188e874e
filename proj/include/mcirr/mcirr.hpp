#pragma once

#include "mcirr/convolution.hpp"
#include "mcirr/exactla.hpp"
#include "mcirr/model.hpp"
#include "mcirr/reduction.hpp"
#include "mcirr/rigidity.hpp"
#include "mcirr/spectral.hpp"
#include "mcirr/tuple_io.hpp"
