#include "types.hpp"

namespace qve {

void PhysicalConstants::validate() const {
  if (!(hbar > 0.0) || !(eps0 > 0.0) || !(c > 0.0))
    throw Error(ErrorCode::invalid_argument,
                "physical constants must be strictly positive");
}

void Geometry::validate() const {
  if (!(surface > 0.0) || !(length > 0.0) || !(conversion > 0.0))
    throw Error(ErrorCode::invalid_argument,
                "geometry parameters must be strictly positive");
}

}  // namespace qve
