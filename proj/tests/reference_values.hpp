// Copyright (c) 2026 the fracvar authors
// SPDX-License-Identifier: MIT
//
// Generated by tools/gen_reference_values.py (mpmath, 50 digits, rounded
// to double). Frozen: edit the generator, not this file.
#pragma once

namespace fracvar::reference {

inline constexpr double kGammaHalf = 1.7724538509055160;
inline constexpr double kSqrtTwoPi = 2.5066282746310005;

inline constexpr double kMu_1d_a03 = 0.25453721530798537;
inline constexpr double kGamma_1d_a03 = 5.3310149711784688;
inline constexpr double kNu_1d_a03 = -0.12969318904286145;
inline constexpr double kMu_1d_a05 = 0.19947114020071634;
inline constexpr double kGamma_1d_a05 = 2.5066282746310005;
inline constexpr double kNu_1d_a05 = -0.19947114020071634;
inline constexpr double kMu_1d_a08 = 0.091613854899057069;
inline constexpr double kGamma_1d_a08 = 0.71953353379479744;
inline constexpr double kNu_1d_a08 = -0.28195845299999038;

inline constexpr double kMu_2d_a03 = 0.13853979210529713;
inline constexpr double kGamma_2d_a03 = 21.625922259660041;
inline constexpr double kNu_2d_a03 = -0.049301190915883543;
inline constexpr double kMu_2d_a05 = 0.11411141979370156;
inline constexpr double kGamma_2d_a05 = 13.145047206596874;
inline constexpr double kNu_2d_a05 = -0.083241983875425065;
inline constexpr double kMu_2d_a08 = 0.056027699923049489;
inline constexpr double kGamma_2d_a08 = 8.1473407847428353;
inline constexpr double kNu_2d_a08 = -0.13207971389562194;

inline constexpr double kRieszInd_a03_x00 = 1.2505436024301654;
inline constexpr double kRieszInd_a03_x05 = 1.2140273114407724;
inline constexpr double kRieszInd_a03_x15 = 0.31521815308061901;
inline constexpr double kRieszInd_a03_x20 = 0.24409933969829033;
inline constexpr double kRieszInd_a03_x30 = 0.17793494278543520;

inline constexpr double kRieszInd_a05_x00 = 1.5957691216057307;
inline constexpr double kRieszInd_a05_x05 = 1.5413946073535961;
inline constexpr double kRieszInd_a05_x15 = 0.69737667746232374;
inline constexpr double kRieszInd_a05_x20 = 0.58409203708247656;
inline constexpr double kRieszInd_a05_x30 = 0.46738995451021814;

inline constexpr double kRieszInd_a08_x00 = 3.4744732282525845;
inline constexpr double kRieszInd_a08_x05 = 3.4006598594461207;
inline constexpr double kRieszInd_a08_x15 = 2.6180743673232918;
inline constexpr double kRieszInd_a08_x20 = 2.4464194841860930;
inline constexpr double kRieszInd_a08_x30 = 2.2416120059467157;

inline constexpr double kLiftInd_s025_x00 = 0.79788456080286536;
inline constexpr double kLiftInd_s025_x05 = 0.88992459148303623;
inline constexpr double kLiftInd_s025_x20 = -0.16861284742054236;

inline constexpr double kLiftTent_s025_x00 = 1.5957691216057307;
inline constexpr double kLiftTent_s025_x05 = 0.41301544025808356;
inline constexpr double kLiftTent_s025_x20 = -0.076897175502817875;

inline constexpr double kLapBump_s025_x00 = 1.2358436490975447;
inline constexpr double kLapBump_s040_x00 = 1.4834758195969025;

}  // namespace fracvar::reference

