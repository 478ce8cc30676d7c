#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "qzrp/numeric.hpp"

namespace qzrp {

// Weakly decreasing positive integers; the empty partition is legal.
struct Partition {
    std::vector<int> parts;

    Partition() = default;
    explicit Partition(std::vector<int> p) : parts(std::move(p)) {
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (parts[i] < 1) throw ContractViolation("partition parts must be positive");
            if (i && parts[i] > parts[i - 1])
                throw ContractViolation("partition parts must be weakly decreasing");
        }
    }

    static Partition parse(const std::string& s) {
        std::vector<int> p;
        std::stringstream in(s);
        std::string tok;
        while (std::getline(in, tok, ',')) {
            if (tok.empty()) continue;
            try {
                std::size_t used = 0;
                int v = std::stoi(tok, &used);
                if (used != tok.size()) throw std::invalid_argument(tok);
                p.push_back(v);
            } catch (const std::exception&) {
                throw ContractViolation("cannot parse partition part '" + tok + "'");
            }
        }
        return Partition(std::move(p));
    }

    std::string str() const {
        std::string out;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(parts[i]);
        }
        return out;
    }

    int size() const { return std::accumulate(parts.begin(), parts.end(), 0); }
    int length() const { return static_cast<int>(parts.size()); }
    bool empty() const { return parts.empty(); }

    // 1-based access, 0 past the end.
    int part(int i) const { return (i >= 1 && i <= length()) ? parts[i - 1] : 0; }

    int largest() const { return parts.empty() ? 0 : parts.front(); }

    Partition conjugate() const {
        std::vector<int> conj;
        for (int j = 1; j <= largest(); ++j) {
            int count = 0;
            for (int p : parts)
                if (p >= j) ++count;
            conj.push_back(count);
        }
        return Partition(std::move(conj));
    }

    bool is_strict() const {
        for (std::size_t i = 1; i < parts.size(); ++i)
            if (parts[i] == parts[i - 1]) return false;
        return true;
    }

    // Distinct values ascending with multiplicities.
    std::vector<std::pair<int, int>> value_multiplicities() const {
        std::map<int, int> m;
        for (int p : parts) ++m[p];
        return {m.begin(), m.end()};
    }

    // Relabels distinct values i_1 < ... < i_j to 1..j keeping multiplicities.
    Partition compressed() const {
        auto vm = value_multiplicities();
        std::map<int, int> relabel;
        int next = 1;
        for (const auto& [v, mult] : vm) relabel[v] = next++;
        std::vector<int> p;
        for (int v : parts) p.push_back(relabel[v]);
        return Partition(std::move(p));
    }

    bool is_compressed() const { return compressed().parts == parts; }

    friend bool operator==(const Partition& a, const Partition& b) { return a.parts == b.parts; }
    friend bool operator<(const Partition& a, const Partition& b) { return a.parts < b.parts; }
};

// Frequency form <1^m1, 2^m2, ...> -> partition.
inline Partition from_frequency(const std::vector<int>& mult) {
    std::vector<int> p;
    for (int v = static_cast<int>(mult.size()); v >= 1; --v)
        for (int k = 0; k < mult[v - 1]; ++k) p.push_back(v);
    return Partition(std::move(p));
}

// Column of r ones: <1^r>.
inline Partition one_column(int r) { return from_frequency({r}); }

struct Cell {
    int row = 0;  // 1-based from the bottom
    int col = 0;  // 1-based from the left
    friend bool operator==(const Cell& a, const Cell& b) { return a.row == b.row && a.col == b.col; }
    friend bool operator<(const Cell& a, const Cell& b) {
        if (a.row != b.row) return a.row < b.row;
        return a.col < b.col;
    }
};

// The diagram dg(lambda): bottom-justified columns, rows indexed from the
// bottom.  Owns the reading order (rows top to bottom, right to left) and the
// index arithmetic every statistic relies on.
class Diagram {
  public:
    explicit Diagram(Partition shape) : shape_(std::move(shape)) {
        const Partition conj = shape_.conjugate();
        rowlen_ = conj.parts;  // rowlen_[r-1] = lambda'_r
        int idx = 0;
        for (int r = nrows(); r >= 1; --r)
            for (int c = row_len(r); c >= 1; --c) {
                reading_.push_back(Cell{r, c});
                ++idx;
            }
        (void)idx;
    }

    const Partition& shape() const { return shape_; }
    int cell_count() const { return static_cast<int>(reading_.size()); }
    int nrows() const { return shape_.largest(); }
    int ncols() const { return shape_.length(); }
    int col_height(int c) const { return shape_.part(c); }
    int row_len(int r) const {
        return (r >= 1 && r <= nrows()) ? rowlen_[r - 1] : 0;
    }

    bool contains(int r, int c) const {
        return c >= 1 && c <= ncols() && r >= 1 && r <= col_height(c);
    }
    bool contains(const Cell& u) const { return contains(u.row, u.col); }

    // Position in reading order (0-based).
    int reading_index(int r, int c) const {
        if (!contains(r, c)) throw ContractViolation("cell outside diagram");
        int offset = 0;
        for (int rr = nrows(); rr > r; --rr) offset += row_len(rr);
        return offset + (row_len(r) - c);
    }

    const std::vector<Cell>& reading_order() const { return reading_; }

    bool is_column_top(const Cell& u) const { return contains(u) && u.row == col_height(u.col); }

    // Lower arm: cells left of u in its row plus cells right of u in the row
    // below.  Upper arm: left in the row above plus right in the same row.
    std::vector<Cell> lower_arm(const Cell& u) const {
        require(u);
        std::vector<Cell> arm;
        for (int j = 1; j < u.col; ++j) arm.push_back(Cell{u.row, j});
        for (int j = u.col + 1; j <= row_len(u.row - 1); ++j) arm.push_back(Cell{u.row - 1, j});
        return arm;
    }

    std::vector<Cell> upper_arm(const Cell& u) const {
        require(u);
        std::vector<Cell> arm;
        for (int j = 1; j < u.col && j <= row_len(u.row + 1); ++j) arm.push_back(Cell{u.row + 1, j});
        for (int j = u.col + 1; j <= row_len(u.row); ++j) arm.push_back(Cell{u.row, j});
        return arm;
    }

    // Maximal run [s, s+k] of columns with the same height as u's column.
    // u must be a column top.
    std::pair<int, int> degenerate_segment(const Cell& u) const {
        require(u);
        if (!is_column_top(u))
            throw ContractViolation("degenerate segment requires a column-top cell");
        int h = col_height(u.col);
        int s = u.col, e = u.col;
        while (s > 1 && col_height(s - 1) == h) --s;
        while (e < ncols() && col_height(e + 1) == h) ++e;
        return {s, e};
    }

  private:
    void require(const Cell& u) const {
        if (!contains(u)) throw ContractViolation("cell outside diagram");
    }

    Partition shape_;
    std::vector<int> rowlen_;
    std::vector<Cell> reading_;
};

// All partitions of m, lexicographically sorted.
inline std::vector<Partition> partitions_of(int m) {
    std::vector<Partition> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rest, int maxpart) -> void {
        if (rest == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int p = std::min(rest, maxpart); p >= 1; --p) {
            cur.push_back(p);
            self(self, rest - p, p);
            cur.pop_back();
        }
    };
    rec(rec, m, m);
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<Partition> partitions_up_to(int m, bool include_empty = false) {
    std::vector<Partition> out;
    if (include_empty) out.emplace_back();
    for (int k = 1; k <= m; ++k)
        for (auto& p : partitions_of(k)) out.push_back(std::move(p));
    return out;
}

}  // namespace qzrp
