// Frozen output of oracle/oracle.py (exact rational arithmetic on data/*.csv).
// Regenerate with: python3 oracle/oracle.py > oracle/golden.json
#pragma once

#include <array>
#include <string_view>

namespace oracle {

struct Metrics {
  double mape;
  double mae;
  double rmse;
};

struct Case {
  std::string_view dataset;
  std::string_view target;
  std::string_view predictor;
  double alpha;
  double beta;
  double r;
  Metrics insample;
  Metrics loo;
  Metrics kfold5_seed42;
};

inline constexpr std::array<Case, 4> kCases{{
    {"mtcars", "mpg", "disp", 29.59985475616395, -0.04121511996278614, -0.8475513792624787,
     {12.631962814690192, 2.6054734857610686, 3.14820727400028},
     {13.46746926633188, 2.7815067645755605, 3.3811499548295063},
     {14.094200484788464, 2.8505103942459145, 3.4568448996800445}},
    {"mtcars", "mpg", "hp", 30.098860539622496, -0.06822827807156367, -0.7761683718265864,
     {15.669438014385955, 2.9074524742347627, 3.7402970868994894},
     {17.110195206858087, 3.160702935994034, 4.153709530214442},
     {17.163903226455997, 3.1598083227802394, 4.126200860546234}},
    {"iris", "petal_length", "sepal_length", -7.101443369602453, 1.8584329782548408, 0.8717537758865832,
     {27.650087308290797, 0.7067088106229915, 0.8620098805304519},
     {27.97103530954174, 0.7152048076783062, 0.8715533053823887},
     {27.80764919297704, 0.710610034425724, 0.8665013813312218}},
    {"iris", "petal_length", "petal_width", 1.0835580328505123, 2.229940495121863, 0.9628654314027961,
     {11.130100662018913, 0.36579694412763786, 0.47500703971487884},
     {11.291599937352947, 0.3708635557946075, 0.48184458871750013},
     {11.296239628391712, 0.3702760469458951, 0.4827692729622055}},
}};

inline constexpr std::array<long, 5> kShuffle5Seed42{1, 2, 0, 4, 3};
inline constexpr std::array<long, 10> kShuffle10Seed7{8, 1, 5, 9, 0, 4, 3, 2, 6, 7};

inline const Case& find(std::string_view dataset, std::string_view predictor) {
  for (const auto& c : kCases) {
    if (c.dataset == dataset && c.predictor == predictor) return c;
  }
  return kCases.front();
}

}  // namespace oracle
