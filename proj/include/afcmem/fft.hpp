#pragma once

#include <cstddef>

#include "afcmem/common.hpp"

namespace afcmem::fft {

// In-place transforms with the e^{-2*pi*i*j*k/N} forward sign, so forward maps
// time samples to spectrum samples under S(nu) = integral E(t) e^{-2*pi*i*nu*t} dt.
// backward() is unnormalized; callers divide by N.
void forward(cdouble* inout, std::size_t n);
void backward(cdouble* inout, std::size_t n);

}  // namespace afcmem::fft
