#pragma once

#include <string_view>

#include "effdim/streams.hpp"

namespace effdim {

/// Parses a source descriptor `kind:key=value,...`. Nested sources are written
/// in brackets, e.g. `mix:r=1/2,src0=[const:value=0],src1=[uniform:seed=3]`.
/// Kinds: const(value), uniform(seed), bernoulli(p, seed[, role]), dyadic(r),
/// mix(r, src0, src1), thin(y, b), xor(a, b), codeword(s, nmax, base).
/// parse_source(d)->descriptor() == d for every descriptor the library prints.
/// Throws std::invalid_argument on unknown kinds or keys and missing values.
SourcePtr parse_source(std::string_view text);

}  // namespace effdim
