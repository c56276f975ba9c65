#include "klab/kippenhahn.hpp"

namespace klab {

KippenhahnPoly kippenhahn_poly(const XiVector& xi) {
  return kippenhahn_poly_over<Scalar>(xi.n, std::span<const Scalar>(xi.xi));
}

}  // namespace klab
