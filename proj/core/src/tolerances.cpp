#include "stiefel_sr/tolerances.hpp"

#include "stiefel_sr/errors.hpp"

namespace stiefel_sr {
namespace {

Tolerances& global_tolerances() {
  static Tolerances tol;
  return tol;
}

}  // namespace

const Tolerances& tolerances() { return global_tolerances(); }

void set_tolerances(const Tolerances& tol) {
  if (!(tol.sym > 0 && tol.unit > 0 && tol.eq > 0 && tol.hit > 0 &&
        tol.velocity > 0)) {
    throw DomainError("tolerances must be strictly positive");
  }
  global_tolerances() = tol;
}

}  // namespace stiefel_sr
