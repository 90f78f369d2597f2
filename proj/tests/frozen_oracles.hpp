#pragma once

// generated by tests/oracle/derive_oracles.py (sympy, exact arithmetic)

namespace frozen {

// theta(k), k = 0..10, exact
//   theta(0) = 2/3
//   theta(1) = 5/27
//   theta(2) = 16/243
//   theta(3) = 64/2187
//   theta(4) = 304/19683
//   theta(5) = 544/59049
//   theta(6) = 3184/531441
//   theta(7) = 19840/4782969
//   theta(8) = 388720/129140163
//   theta(9) = 2632864/1162261467
//   theta(10) = 18357904/10460353203
inline constexpr double kThetaExact[] = {
    0.6666666666666666666666667,
    0.1851851851851851851851852,
    0.06584362139917695473251029,
    0.02926383173296753543667124,
    0.01544480008128842148046538,
    0.009212687767786075970803909,
    0.005991257731338003654215614,
    0.004148051137274776399345260,
    0.003010062795104262025749495,
    0.002265294062269725061787667,
    0.001754998482721884051853464,
};
// hr_ratio(1,2,1) = 16/7
inline constexpr long long kHrRatio121Num = 16;
inline constexpr long long kHrRatio121Den = 7;
// hr_ratio(3,5,p), p = 1..3
inline constexpr double kHrRatio35[] = {2.8851576923076925, 2.726474019230769, 2.576517948173077};
// dyck words of semilength 1: 1
// dyck words of semilength 2: 2
// dyck words of semilength 3: 5
// dyck words of semilength 4: 14
// dyck words of semilength 5: 42
inline constexpr int kCatalan[] = {1, 1, 2, 5, 14, 42};
inline constexpr int kBinaryTreeVertices = 15;
inline constexpr int kBinaryPruneTheta = 6;
// n=1: pointed 6, rooted 2
// n=2: pointed 36, rooted 9
// n=3: pointed 270, rooted 54
inline constexpr int kPointedCensus[] = {0, 6, 36, 270};
inline constexpr int kRootedCensus[] = {0, 2, 9, 54};

}  // namespace frozen
