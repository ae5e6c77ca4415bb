#pragma once

// Umbrella header. The FFTW-backed transform engine lives in
// cayleyff/spectrum_fft.hpp and is opt-in (it adds a link dependency).

#include "base_field.hpp"
#include "bigint.hpp"
#include "cayley_graph.hpp"
#include "comp_algebraic.hpp"
#include "errors.hpp"
#include "experiments.hpp"
#include "ext_field.hpp"
#include "factorization.hpp"
#include "poly.hpp"
#include "poly_enum.hpp"
#include "primes.hpp"
#include "spectrum.hpp"
