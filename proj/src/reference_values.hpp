#pragma once

// Reference values used only by the self-test checks.

#include <array>

namespace pt::reference {

struct Table1Row {
    int n;
    double s_pos;
    double s_mom;
    double sum;
};

// BBM table for the first excited state of the hyperbolic well.
inline constexpr std::array<Table1Row, 12> kExcitedTable = {{
    {2, 2.23472, 0.722555, 2.95728},
    {3, 1.7988, 1.0384, 2.8372},
    {4, 1.56242, 1.22799, 2.7904},
    {5, 1.40082, 1.36474, 2.76556},
    {6, 1.27825, 1.47193, 2.75018},
    {7, 1.1796, 1.56013, 2.73973},
    {8, 1.0971, 1.63508, 2.73217},
    {9, 1.02621, 1.70025, 2.72646},
    {10, 0.96409, 1.7579, 2.72199},
    {11, 0.908807, 1.80958, 2.71839},
    {12, 0.859009, 1.85643, 2.71544},
    {13, 0.81371, 1.89926, 2.71297},
}};

inline constexpr double kTableBoundColumn = 2.1447;

}  // namespace pt::reference
