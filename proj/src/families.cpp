#include "landscape/families.hpp"

#include <cmath>

namespace landscape {

namespace {
constexpr double kPi = M_PI;
}

Family branch_family(Branch b) {
  switch (b) {
    case Branch::kIdentity:
    case Branch::kTypeA: return Family::FULL_DIAG;
    case Branch::kTypeII:
    case Branch::kTypeI: return Family::SPLIT_1;
    case Branch::kTypeMII:
    case Branch::kTypeMI: return Family::SPLIT_2;
    case Branch::kTypeN: return Family::SPLIT_3;
  }
  throw std::invalid_argument("unknown branch");
}

Vec branch_seed(Branch b, double d) {
  const double P = kPi;
  const double P2 = P * P, P3 = P2 * P, P4 = P3 * P, P5 = P4 * P,
               P6 = P5 * P, P7 = P6 * P, P8 = P7 * P, P9 = P8 * P;
  const double id = 1.0 / d;
  const double id2 = id * id;
  const double id32 = std::pow(d, -1.5);

  switch (b) {
    case Branch::kIdentity: {
      Vec a(2);
      a << 1.0, 0.0;
      return a;
    }
    case Branch::kTypeA: {
      Vec a(2);
      const double c2 =
          -4.0 *
          (-16.0 * P2 + (P - 2.0) * (-6.0 * P3 + 16.0 * P + 8.0 * P2 + P4) +
           32.0 * P) /
          (P3 * (P - 2.0) * (P - 2.0));
      a << -1.0 + 2.0 * id + c2 * id2, 2.0 * id + (-2.0 + 8.0 / P) * id2;
      return a;
    }
    case Branch::kTypeII: {
      Vec a(5);
      a[0] = 1.0 + 8.0 / P * id2;
      a[1] = -4.0 / P * id2;
      a[2] = 2.0 * id + (-8.0 / P - 2.0) * id2;
      a[3] = 4.0 / (P * d) + 32.0 / P3 * id32 +
             8.0 * (-7.0 * P3 - 8.0 * P2 + 64.0) / P5 * id2;
      a[4] = -1.0 + (8.0 / P2 + 2.0 + 8.0 / P) * id -
             64.0 * (12.0 - P) / (3.0 * P4 * (P - 2.0)) * id32 -
             2.0 *
                 (-128.0 * P3 - 40.0 * P4 - 224.0 * P2 - 512.0 * P + 2560.0 +
                  P7 + 10.0 * P6 + 52.0 * P5) /
                 (P6 * (P - 2.0)) * id2;
      return a;
    }
    case Branch::kTypeI: {
      Vec a(5);
      const double c1 =
          -4.0 *
          (-16.0 * P2 + (P - 2.0) * (-6.0 * P3 + 16.0 * P + 8.0 * P2 + P4) +
           32.0 * P) /
          (P3 * (P - 2.0) * (P - 2.0));
      a[0] = -1.0 + 2.0 * id + c1 * id2;
      a[1] = 2.0 * id + (-2.0 + 8.0 / P) * id2;
      a[2] = -4.0 *
             (-32.0 * P + (P - 2.0) * (-10.0 * P2 - 8.0 * P + 3.0 * P3) +
              16.0 * P2) /
             (P3 * (P - 2.0) * (P - 2.0)) * id2;
      a[3] = (2.0 - 4.0 / P) * id + 32.0 * (1.0 - P) / P3 * id32 +
             (-136.0 / P2 - 128.0 / P3 - 2.0 - 512.0 / P5 + 768.0 / P4 +
              52.0 / P) *
                 id2;
      const double disc =
          -160.0 * P3 - 12.0 * P5 - 192.0 * P + 64.0 + P6 + 240.0 * P2 +
          60.0 * P4;
      a[4] = 1.0 + 8.0 * (P - 1.0) / P2 * id -
             2.0 *
                 (-90.0 * P3 - 792.0 * P + P * std::sqrt(std::max(0.0, disc)) +
                  384.0 + 11.0 * P4 + 468.0 * P2) /
                 (3.0 * P4 * (P - 2.0)) * id32;
      // The d^-2 coefficient of a5 is not known in closed form; omitted.
      return a;
    }
    case Branch::kTypeMII: {
      Vec a(6);
      a[0] = 1.0 + 16.0 / P * id2;
      a[1] = -8.0 / P * id2;
      a[2] = 2.0 * id +
             2.0 * (-8.0 * P2 - P3 - 16.0 + 4.0 * P) / (P2 * (2.0 + P)) * id2;
      a[3] = 4.0 / (P * d) + 32.0 / P3 * id32 +
             4.0 *
                 (-24.0 * P4 - 160.0 * P2 - P5 + 256.0 + 192.0 * P +
                  28.0 * P3) /
                 (P5 * (2.0 + P)) * id2;
      a[4] = -1.0 + (8.0 / P2 + 2.0 + 8.0 / P) * id -
             64.0 * (12.0 - P) / (3.0 * P4 * (P - 2.0)) * id32 +
             2.0 *
                 (-112.0 * P5 - 3008.0 * P2 - 240.0 * P4 + 5120.0 +
                  2560.0 * P + P8 + 8.0 * std::sqrt(2.0) * P6 +
                  4.0 * std::sqrt(2.0) * P7 + 672.0 * P3 + 12.0 * P7 +
                  104.0 * P6) /
                 (P6 * (4.0 - P2)) * id2;
      a[5] = 2.0 * (-12.0 * P + 16.0 + P3 + 4.0 * P2) / (P2 * (2.0 + P)) * id +
             16.0 * (-24.0 * P2 + 64.0 + 24.0 * P + P4 + 4.0 * P3) /
                 (P4 * (4.0 + P2 + 4.0 * P)) * id32 +
             2.0 *
                 (-184.0 * P7 - 26.0 * P8 - 3968.0 * P3 - 8192.0 * P2 -
                  16.0 * std::sqrt(2.0) * P7 - 4.0 * std::sqrt(2.0) * P8 -
                  112.0 * P5 - P9 - 16.0 * std::sqrt(2.0) * P6 + 20480.0 +
                  24576.0 * P + 864.0 * P4 + 112.0 * P6) /
                 (P6 * (8.0 + P3 + 12.0 * P + 6.0 * P2)) * id2;
      return a;
    }
    case Branch::kTypeMI: {
      Vec a(6);
      a[0] = -1.0 + 2.0 * id + (-4.0 + 24.0 / P) * id2;
      a[1] = 2.0 * id + (-2.0 + 12.0 / P) * id2;
      a[2] = 8.0 * (-4.0 * P - P2 + 8.0) / (P2 * (2.0 + P)) * id2;
      a[3] = (2.0 - 4.0 / P) * id + 32.0 * (1.0 - P) / P3 * id32 +
             2.0 *
                 (-344.0 * P3 - P6 - 512.0 + 4.0 * P4 + 384.0 * P +
                  512.0 * P2 + 26.0 * P5) /
                 (P5 * (2.0 + P)) * id2;
      a[4] = 1.0 + 8.0 * (P - 1.0) / P2 * id -
             8.0 * (-24.0 * P3 - 200.0 * P + 96.0 + 3.0 * P4 + 120.0 * P2) /
                 (3.0 * P4 * (P - 2.0)) * id32 +
             2.0 *
                 (-224.0 * P6 - 6816.0 * P3 - 496.0 * P5 - 1088.0 * P2 - P8 -
                  5120.0 + 9728.0 * P + 52.0 * P7 + 4112.0 * P4) /
                 (P6 * (4.0 - P2)) * id2;
      a[5] = 4.0 * (-P2 - 8.0 + 6.0 * P) / (P2 * (2.0 + P)) * id +
             16.0 * (-40.0 * P2 - 40.0 * P - P4 + 64.0 + 20.0 * P3) /
                 (P4 * (4.0 + P2 + 4.0 * P)) * id32 +
             4.0 *
                 (-4816.0 * P4 - 116.0 * P7 - 4544.0 * P3 - 10240.0 +
                  4096.0 * P + 5.0 * P8 + 14848.0 * P2 + 176.0 * P6 +
                  1632.0 * P5) /
                 (P6 * (8.0 + P3 + 12.0 * P + 6.0 * P2)) * id2;
      return a;
    }
    case Branch::kTypeN: {
      Vec a(6);
      a[0] = 1.0 + 24.0 / P * id2;
      a[1] = -12.0 / P * id2;
      a[2] = 2.0 * id +
             2.0 * (-10.0 * P2 - 32.0 - P3 + 16.0 * P) / (P2 * (2.0 + P)) *
                 id2;
      a[3] = 4.0 / (P * d) + 32.0 / P3 * id32 +
             8.0 *
                 (-17.0 * P4 - 144.0 * P2 - P5 + 128.0 + 128.0 * P +
                  50.0 * P3) /
                 (P5 * (2.0 + P)) * id2;
      a[4] = -1.0 + (8.0 / P2 + 2.0 + 8.0 / P) * id -
             64.0 * (12.0 - P) / (3.0 * P4 * (P - 2.0)) * id32 +
             2.0 *
                 (-288.0 * P5 - 5056.0 * P2 - 272.0 * P4 + 5120.0 + P8 +
                  3584.0 * P + 8.0 * std::sqrt(3.0) * P6 +
                  4.0 * std::sqrt(3.0) * P7 + 16.0 * P7 + 1824.0 * P3 +
                  144.0 * P6) /
                 (P6 * (4.0 - P2)) * id2;
      a[5] = 2.0 * (-12.0 * P + 16.0 + P3 + 4.0 * P2) / (P2 * (2.0 + P)) * id +
             16.0 * (-24.0 * P2 + 64.0 + 24.0 * P + P4 + 4.0 * P3) /
                 (P4 * (4.0 + P2 + 4.0 * P)) * id32 +
             2.0 *
                 (-1920.0 * P5 - 164.0 * P7 - 28.0 * P8 - 4992.0 * P3 -
                  13824.0 * P2 - 16.0 * std::sqrt(3.0) * P7 -
                  4.0 * std::sqrt(3.0) * P8 - P9 - 16.0 * std::sqrt(3.0) * P6 +
                  20480.0 + 28672.0 * P + 312.0 * P6 + 4960.0 * P4) /
                 (P6 * (8.0 + P3 + 12.0 * P + 6.0 * P2)) * id2;
      return a;
    }
  }
  throw std::invalid_argument("unknown branch");
}

double branch_loss_expansion(Branch b, double d) {
  const double P = kPi;
  const double sd = std::sqrt(d);
  switch (b) {
    case Branch::kIdentity:
      return 0.0;
    case Branch::kTypeA:
      return -1.0 / P + 0.5 - 4.0 / (3.0 * P * sd) +
             (-0.5 - 2.0 / (P * P) + 3.0 / P) / d;
    case Branch::kTypeII:
      return (0.5 - 2.0 / (P * P)) / d;
    case Branch::kTypeI:
      return -1.0 / P + 0.5 - 4.0 / (3.0 * P * sd) +
             (-1.0 - 4.0 / (P * P) + 5.0 / P) / d;
    case Branch::kTypeMII:
      return (P * P - 4.0) / (P * P * d);
    case Branch::kTypeMI:
      return -1.0 / P + 0.5 - 4.0 / (3.0 * P * sd) +
             (-1.5 - 6.0 / (P * P) + 7.0 / P) / d;
    case Branch::kTypeN:
      return (1.5 - 6.0 / (P * P)) / d;
  }
  throw std::invalid_argument("unknown branch");
}

std::string branch_name(Branch b) {
  switch (b) {
    case Branch::kIdentity: return "identity";
    case Branch::kTypeA: return "typeA";
    case Branch::kTypeII: return "typeII";
    case Branch::kTypeI: return "typeI";
    case Branch::kTypeMII: return "typeM_II";
    case Branch::kTypeMI: return "typeM_I";
    case Branch::kTypeN: return "typeN";
  }
  return "?";
}

Branch branch_from_name(const std::string& name) {
  for (Branch b : all_branches())
    if (branch_name(b) == name) return b;
  throw std::invalid_argument("unknown family name: " + name);
}

}  // namespace landscape
