#include "pptlab/linalg.hpp"

namespace pptlab {

std::optional<std::vector<Rat>> nullspace_vector(const RatMatrix& m) {
    if (m.empty() || m.front().empty()) throw ValidationError("nullspace: empty matrix");
    const size_t rows = m.size(), cols = m.front().size();
    for (const auto& row : m)
        if (row.size() != cols) throw ValidationError("nullspace: ragged matrix");

    RatMatrix a(m);
    std::vector<int> pivot_col;  // pivot column of each eliminated row
    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t p = row;
        while (p < rows && a[p][col] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[row]);
        Rat inv_p = Rat(1) / a[row][col];
        for (size_t c = col; c < cols; ++c) a[row][c] *= inv_p;
        for (size_t r2 = 0; r2 < rows; ++r2) {
            if (r2 == row || a[r2][col] == 0) continue;
            Rat f = a[r2][col];
            for (size_t c = col; c < cols; ++c) a[r2][c] -= f * a[row][c];
        }
        pivot_col.push_back(static_cast<int>(col));
        ++row;
    }
    if (pivot_col.size() == cols) return std::nullopt;  // trivial kernel

    // First free column gives a kernel vector.
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col) is_pivot[static_cast<size_t>(c)] = true;
    size_t free_col = 0;
    while (is_pivot[free_col]) ++free_col;

    std::vector<Rat> z(cols, 0);
    z[free_col] = 1;
    for (size_t r2 = 0; r2 < pivot_col.size(); ++r2)
        z[static_cast<size_t>(pivot_col[r2])] = -a[r2][free_col];
    return z;
}

RatMatrix parse_matrix(const std::string& text) {
    RatMatrix m;
    std::vector<Rat> row;
    std::string cur;
    auto flush_entry = [&]() {
        if (cur.empty()) throw ValidationError("matrix: empty entry");
        row.push_back(rat_from_string(cur));
        cur.clear();
    };
    for (char c : text) {
        if (isspace(static_cast<unsigned char>(c))) continue;
        if (c == ',') {
            flush_entry();
        } else if (c == ';') {
            flush_entry();
            m.push_back(std::move(row));
            row.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) flush_entry();
    if (!row.empty()) m.push_back(std::move(row));
    if (m.empty()) throw ValidationError("matrix: no rows");
    return m;
}

}  // namespace pptlab
