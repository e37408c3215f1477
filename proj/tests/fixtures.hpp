#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <utility>
#include <vector>

#include "haar/group/instances.hpp"

namespace fixtures {

using haar::CayleyTable;

// Direct product Z_a x Z_b, element (x, y) at index x * b + y.
inline CayleyTable product_table(int a, int b) {
    const int k = a * b;
    CayleyTable t(k, std::vector<int>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) t[i][j] = ((i / b + j / b) % a) * b + (i % b + j % b) % b;
    return t;
}

// Symmetric group S3 as permutations of {0,1,2} in lexicographic order
// (index 0 is the identity); (p q)(x) = p(q(x)).
inline CayleyTable s3_table() {
    std::vector<std::array<int, 3>> perms;
    std::array<int, 3> p{0, 1, 2};
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    CayleyTable t(6, std::vector<int>(6));
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            std::array<int, 3> c{};
            for (int x = 0; x < 3; ++x) c[x] = perms[i][perms[j][x]];
            t[i][j] = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
        }
    return t;
}

// Quaternion group {±1, ±i, ±j, ±k}: index 2u + s for unit u in (1, i, j, k)
// and sign s (0 = +, 1 = -).
inline CayleyTable q8_table() {
    // unit products: u * v = sign * w
    const int w[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    const int neg[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    CayleyTable t(8, std::vector<int>(8));
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            const int u = a / 2, v = b / 2;
            const int s = (a % 2 + b % 2 + neg[u][v]) % 2;
            t[a][b] = 2 * w[u][v] + s;
        }
    return t;
}

struct NamedTable {
    std::string name;
    CayleyTable table;
};

// All fixture groups of order <= 12.
inline std::vector<NamedTable> small_groups() {
    std::vector<NamedTable> v;
    for (int k = 1; k <= 12; ++k) v.push_back({"Z" + std::to_string(k), haar::cyclic_table(k)});
    v.push_back({"Z2xZ2", product_table(2, 2)});
    v.push_back({"Z2xZ4", product_table(2, 4)});
    v.push_back({"Z3xZ3", product_table(3, 3)});
    v.push_back({"S3", s3_table()});
    v.push_back({"Q8", q8_table()});
    return v;
}

inline std::string table_text(const CayleyTable& t) {
    std::string s = std::to_string(t.size()) + "\n";
    for (const auto& row : t) {
        for (std::size_t j = 0; j < row.size(); ++j) s += (j ? " " : "") + std::to_string(row[j]);
        s += "\n";
    }
    return s;
}

}  // namespace fixtures
