#pragma once

#include <array>

#include "landscape/types.hpp"

namespace landscape {

// Named critical branches of the loss (the block family each lives in, a
// large-d asymptotic seed for its coefficients, and its leading loss value).
enum class Branch {
  kIdentity,  // global minimum, p = 0, (a1, a2) = (1, 0)
  kTypeA,     // p = 0 branch near (-1, 0)
  kTypeII,    // p = 1 branch near (1, 0, 0, 0, -1)
  kTypeI,     // p = 1 branch near (-1, 0, 0, 0, 1)
  kTypeMII,   // p = 2 branch near (1, 0, 0, 0, -1, 0)
  kTypeMI,    // p = 2 branch near (-1, 0, 0, 0, 1, 0)
  kTypeN,     // p = 3 branch near (1, 0, 0, 0, -1, 0)
};

Family branch_family(Branch b);

// Coefficient seed from the known half-power expansion, truncated after the
// d^-2 terms (the d^-2 term of the p = 1 "type I" a5 is not known in closed
// form and is omitted from the seed).
Vec branch_seed(Branch b, double d);

// Known closed-form loss expansion of the branch (through the d^-1 term).
double branch_loss_expansion(Branch b, double d);

// CLI-facing names: identity, typeA, typeII, typeI, typeM_II, typeM_I, typeN.
std::string branch_name(Branch b);
Branch branch_from_name(const std::string& name);

inline const std::array<Branch, 7>& all_branches() {
  static const std::array<Branch, 7> a = {
      Branch::kIdentity, Branch::kTypeA,  Branch::kTypeII, Branch::kTypeI,
      Branch::kTypeMII,  Branch::kTypeMI, Branch::kTypeN};
  return a;
}

}  // namespace landscape
