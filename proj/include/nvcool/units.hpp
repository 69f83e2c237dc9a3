// SPDX-License-Identifier: Apache-2.0
#pragma once

// Everything inside nvcool is SI. These helpers convert the mixed units that
// show up in lab notes and tables at the boundary.

namespace nvcool::units {

constexpr double cubic_cm(double v) { return v * 1e-6; }
constexpr double to_cubic_cm(double m3) { return m3 * 1e6; }

constexpr double square_cm(double v) { return v * 1e-4; }
constexpr double to_square_cm(double m2) { return m2 * 1e4; }

constexpr double per_cm(double v) { return v * 1e2; }
constexpr double to_per_cm(double per_m) { return per_m * 1e-2; }

constexpr double per_cubic_cm(double v) { return v * 1e6; }
constexpr double to_per_cubic_cm(double per_m3) { return per_m3 * 1e-6; }

constexpr double micro_s(double v) { return v * 1e-6; }
constexpr double milli_s(double v) { return v * 1e-3; }
constexpr double nano_m(double v) { return v * 1e-9; }
constexpr double mega_hz(double v) { return v * 1e6; }
constexpr double giga_hz(double v) { return v * 1e9; }

} // namespace nvcool::units
