#pragma once

#include <cstdint>
#include <vector>

#include "slscc/errors.hpp"

namespace slscc {

struct TuWitness {
    std::vector<int> rows;
    std::vector<int> cols;
    long long det = 0;
};

struct TuReport {
    bool isTuUpToOrder = true;
    int maxOrderChecked = 0;
    TuWitness witness; // populated when a violating minor was found
};

namespace detail {

// determinants on a 5x5 stack buffer, exact over integers
inline long long det3x3(const long long a[5][5], int r0, int r1, int r2, int c0, int c1, int c2) {
    return a[r0][c0] * (a[r1][c1] * a[r2][c2] - a[r1][c2] * a[r2][c1]) -
           a[r0][c1] * (a[r1][c0] * a[r2][c2] - a[r1][c2] * a[r2][c0]) +
           a[r0][c2] * (a[r1][c0] * a[r2][c1] - a[r1][c1] * a[r2][c0]);
}

inline long long det4x4(const long long a[5][5], int r0, int r1, int r2, int r3) {
    long long det = 0;
    const int cols[4] = {0, 1, 2, 3};
    for (int c = 0; c < 4; ++c) {
        if (a[r0][c] == 0) continue;
        int cc[3], q = 0;
        for (int k = 0; k < 4; ++k)
            if (k != c) cc[q++] = cols[k];
        const long long minor = det3x3(a, r1, r2, r3, cc[0], cc[1], cc[2]);
        det += ((c % 2 == 0) ? 1 : -1) * a[r0][c] * minor;
    }
    return det;
}

inline long long detInt(const long long a[5][5], int n) {
    switch (n) {
    case 1: return a[0][0];
    case 2: return a[0][0] * a[1][1] - a[0][1] * a[1][0];
    case 3: return det3x3(a, 0, 1, 2, 0, 1, 2);
    case 4: return det4x4(a, 0, 1, 2, 3);
    default: {
        long long det = 0;
        for (int c = 0; c < 5; ++c) {
            if (a[0][c] == 0) continue;
            // shift column c out into a 4x4 view
            long long sub[5][5];
            for (int r = 1; r < 5; ++r) {
                int q = 0;
                for (int k = 0; k < 5; ++k)
                    if (k != c) sub[r - 1][q++] = a[r][k];
            }
            det += ((c % 2 == 0) ? 1 : -1) * a[0][c] * det4x4(sub, 0, 1, 2, 3);
        }
        return det;
    }
    }
}

inline bool nextCombination(std::vector<int>& idx, int limit) {
    const int k = static_cast<int>(idx.size());
    int i = k - 1;
    while (i >= 0 && idx[i] == limit - k + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    return true;
}

} // namespace detail

/// Exhaustively tests all square minors up to maxOrder for determinants
/// outside {-1, 0, 1}. Entries must already be in {-1, 0, 1}; sizes are capped
/// (maxOrder <= 5, min dimension <= 24, max dimension <= 64) to bound the
/// minor count. Determinants are computed exactly over integers.
inline TuReport check_tu(const std::vector<std::vector<int>>& matrix, int maxOrder) {
    const int nr = static_cast<int>(matrix.size());
    const int nc = nr > 0 ? static_cast<int>(matrix[0].size()) : 0;
    if (maxOrder < 1 || maxOrder > 5)
        throw TooLargeError("check_tu supports orders 1..5, got " + std::to_string(maxOrder));
    if (std::min(nr, nc) > 24 || std::max(nr, nc) > 64)
        throw TooLargeError("check_tu caps matrices at min dim 24 / max dim 64 (" +
                            std::to_string(nr) + "x" + std::to_string(nc) + ")");
    for (int r = 0; r < nr; ++r) {
        if (static_cast<int>(matrix[r].size()) != nc)
            throw Error("check_tu: ragged matrix");
        for (int c = 0; c < nc; ++c)
            if (matrix[r][c] < -1 || matrix[r][c] > 1)
                throw Error("check_tu: entry out of {-1,0,1} at (" + std::to_string(r) + "," +
                            std::to_string(c) + ")");
    }

    TuReport rep;
    rep.maxOrderChecked = std::min({maxOrder, nr, nc});
    for (int k = 1; k <= rep.maxOrderChecked; ++k) {
        std::vector<int> rowIdx(k), colIdx(k);
        for (int i = 0; i < k; ++i) rowIdx[i] = i;
        long long sub[5][5];
        do {
            const int* rows[5];
            for (int i = 0; i < k; ++i) rows[i] = matrix[rowIdx[i]].data();
            for (int i = 0; i < k; ++i) colIdx[i] = i;
            do {
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j) sub[i][j] = rows[i][colIdx[j]];
                const long long det = detail::detInt(sub, k);
                if (det < -1 || det > 1) {
                    rep.isTuUpToOrder = false;
                    rep.witness.rows = rowIdx;
                    rep.witness.cols = colIdx;
                    rep.witness.det = det;
                    return rep;
                }
            } while (detail::nextCombination(colIdx, nc));
        } while (detail::nextCombination(rowIdx, nr));
    }
    return rep;
}

} // namespace slscc
