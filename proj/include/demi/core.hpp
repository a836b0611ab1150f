#pragma once

// Exact symmetric matrices, permutations, partial permutations and the
// plain-text matrix file format.  Everything is integer-valued: decimal
// input is scaled to integers once at parse time, so all downstream
// comparisons are exact.

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace demi {

using Value = std::int64_t;

// Input limits.  They leave enough 64-bit headroom for every derived
// quantity in the toolkit (normalized entries, border sums, tour costs).
inline constexpr int kMaxOrder = 4096;
inline constexpr Value kMaxAbsEntry = 1'000'000'000'000LL;  // 10^12

/// Square symmetric matrix with exact integer entries, 1-based access.
class SymmetricMatrix {
public:
    explicit SymmetricMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0) {
        if (n < 1) throw std::invalid_argument("matrix order must be positive");
    }

    static SymmetricMatrix from_rows(const std::vector<std::vector<Value>>& rows) {
        const int n = static_cast<int>(rows.size());
        SymmetricMatrix m(n);
        for (int i = 1; i <= n; ++i) {
            if (static_cast<int>(rows[i - 1].size()) != n)
                throw std::invalid_argument("matrix rows must all have length n");
            for (int j = 1; j <= n; ++j) m.a_[m.idx(i, j)] = rows[i - 1][j - 1];
        }
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                if (m(i, j) != m(j, i))
                    throw std::invalid_argument("matrix not symmetric at (" + std::to_string(i) +
                                                "," + std::to_string(j) + ")");
        return m;
    }

    int size() const { return n_; }

    Value operator()(int i, int j) const {
        assert(1 <= i && i <= n_ && 1 <= j && j <= n_);
        return a_[idx(i, j)];
    }

    /// Sets entry (i,j) and its mirror (j,i).
    void set(int i, int j, Value v) {
        assert(1 <= i && i <= n_ && 1 <= j && j <= n_);
        a_[idx(i, j)] = v;
        a_[idx(j, i)] = v;
    }

    bool operator==(const SymmetricMatrix&) const = default;

private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i - 1) * n_ + (j - 1);
    }

    int n_;
    std::vector<Value> a_;
};

/// Bijection of {1..n}; images(i) is the element placed at position i.
class Permutation {
public:
    static Permutation identity(int n) {
        std::vector<int> img(n);
        for (int i = 0; i < n; ++i) img[i] = i + 1;
        return Permutation(std::move(img));
    }

    static Permutation from_images(std::vector<int> images) {
        const int n = static_cast<int>(images.size());
        if (n < 1) throw std::invalid_argument("permutation must be nonempty");
        std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
        for (int v : images) {
            if (v < 1 || v > n || seen[v])
                throw std::invalid_argument("permutation images must be a bijection of {1..n}");
            seen[v] = 1;
        }
        return Permutation(std::move(images));
    }

    int size() const { return static_cast<int>(img_.size()); }

    int operator()(int i) const {
        assert(1 <= i && i <= size());
        return img_[i - 1];
    }

    const std::vector<int>& images() const { return img_; }

    bool operator==(const Permutation&) const = default;

private:
    explicit Permutation(std::vector<int> img) : img_(std::move(img)) {}
    std::vector<int> img_;
};

/// result(i) = phi(pi(i)).
inline Permutation compose(const Permutation& phi, const Permutation& pi) {
    if (phi.size() != pi.size()) throw std::invalid_argument("compose: size mismatch");
    std::vector<int> img(phi.size());
    for (int i = 1; i <= phi.size(); ++i) img[i - 1] = phi(pi(i));
    return Permutation::from_images(std::move(img));
}

/// result(i) = pi(n+1-i).
inline Permutation reverse(const Permutation& pi) {
    std::vector<int> img(pi.images().rbegin(), pi.images().rend());
    return Permutation::from_images(std::move(img));
}

inline Permutation inverse(const Permutation& pi) {
    std::vector<int> img(pi.size());
    for (int i = 1; i <= pi.size(); ++i) img[pi(i) - 1] = i;
    return Permutation::from_images(std::move(img));
}

/// Simultaneous row/column reordering: result(i,j) = C(phi(i), phi(j)).
inline SymmetricMatrix apply(const SymmetricMatrix& C, const Permutation& phi) {
    if (C.size() != phi.size()) throw std::invalid_argument("apply: size mismatch");
    SymmetricMatrix out(C.size());
    for (int i = 1; i <= C.size(); ++i)
        for (int j = i; j <= C.size(); ++j) out.set(i, j, C(phi(i), phi(j)));
    return out;
}

/// Principal submatrix C[keep]; `keep` holds 1-based row/column indices.
inline SymmetricMatrix submatrix(const SymmetricMatrix& C, std::span<const int> keep) {
    const int k = static_cast<int>(keep.size());
    SymmetricMatrix out(k);
    for (int i = 1; i <= k; ++i)
        for (int j = i; j <= k; ++j) out.set(i, j, C(keep[i - 1], keep[j - 1]));
    return out;
}

/// Permutation with a fixed leading prefix and a fixed last slot; the slots
/// in between stay kUnset until the recognition fills them.
class PartialPermutation {
public:
    static constexpr int kUnset = -1;

    PartialPermutation(int n, int first, int last)
        : n_(n), r_(1), last_fixed_(true), img_(static_cast<std::size_t>(n), kUnset),
          used_(static_cast<std::size_t>(n) + 1, 0) {
        if (n < 2) throw std::invalid_argument("partial permutation needs n >= 2");
        if (first < 1 || first > n || last < 1 || last > n || first == last)
            throw std::invalid_argument("first/last slots must be distinct indices in {1..n}");
        img_[0] = first;
        img_[n - 1] = last;
        used_[first] = 1;
        used_[last] = 1;
    }

    int size() const { return n_; }
    int prefix_len() const { return r_; }
    bool last_fixed() const { return last_fixed_; }
    bool complete() const { return r_ == n_ - 1; }

    int at(int pos) const {
        assert(1 <= pos && pos <= n_);
        return img_[pos - 1];
    }

    bool uses(int value) const {
        assert(1 <= value && value <= n_);
        return used_[value] != 0;
    }

    /// Fixes slot r+1 with a value not used so far.
    void fix_next(int value) {
        if (complete()) throw std::logic_error("fix_next: no free slot left");
        if (value < 1 || value > n_ || used_[value])
            throw std::logic_error("fix_next: value unavailable");
        img_[r_] = value;
        used_[value] = 1;
        ++r_;
    }

    /// Ascending list of values not assigned to any slot.
    std::vector<int> free_indices() const {
        std::vector<int> out;
        out.reserve(n_ - r_ - 1);
        for (int v = 1; v <= n_; ++v)
            if (!used_[v]) out.push_back(v);
        return out;
    }

    Permutation to_permutation() const {
        if (!complete()) throw std::logic_error("to_permutation: slots still unset");
        return Permutation::from_images(img_);
    }

private:
    int n_;
    int r_;
    bool last_fixed_;
    std::vector<int> img_;
    std::vector<char> used_;
};

/// Outcome of a condition check: either it holds, or a minimal violating
/// witness (a quadruple for the four-point conditions, a triple for the
/// Anti-Robinson condition), 1-based in the matrix's current order.
struct Verdict {
    bool holds = true;
    std::vector<int> witness;  // empty iff holds

    bool operator==(const Verdict&) const = default;
};

// ---------------------------------------------------------------------------
// Matrix file format: first significant line is n, then n lines with n
// whitespace-separated numbers; '#' starts a comment line; symmetry is
// mandatory.  Decimal entries are scaled to integers by the smallest power
// of ten clearing all fractional parts (at most 12 fractional digits).

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line, int column)
        : std::runtime_error("parse error at line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + msg),
          line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

struct ParsedMatrix {
    SymmetricMatrix matrix;
    int scale_digits;  // entries carry a factor of 10^scale_digits
};

namespace detail {

struct RawNumber {
    bool negative = false;
    std::string int_digits;
    std::string frac_digits;
    int line = 0;
    int column = 0;
};

inline RawNumber parse_number_token(std::string_view tok, int line, int column) {
    RawNumber num;
    num.line = line;
    num.column = column;
    std::size_t pos = 0;
    if (pos < tok.size() && (tok[pos] == '-' || tok[pos] == '+')) {
        num.negative = tok[pos] == '-';
        ++pos;
    }
    std::size_t int_start = pos;
    while (pos < tok.size() && tok[pos] >= '0' && tok[pos] <= '9') ++pos;
    if (pos == int_start) throw ParseError("non-numeric token '" + std::string(tok) + "'", line, column);
    num.int_digits = std::string(tok.substr(int_start, pos - int_start));
    if (pos < tok.size() && tok[pos] == '.') {
        ++pos;
        std::size_t frac_start = pos;
        while (pos < tok.size() && tok[pos] >= '0' && tok[pos] <= '9') ++pos;
        if (pos == frac_start)
            throw ParseError("non-numeric token '" + std::string(tok) + "'", line, column);
        num.frac_digits = std::string(tok.substr(frac_start, pos - frac_start));
        if (num.frac_digits.size() > 12)
            throw ParseError("more than 12 fractional digits in '" + std::string(tok) + "'",
                             line, column);
    }
    if (pos != tok.size())
        throw ParseError("non-numeric token '" + std::string(tok) + "'", line, column);
    return num;
}

inline Value scaled_value(const RawNumber& num, int scale_digits) {
    __int128 v = 0;
    for (char c : num.int_digits) {
        v = v * 10 + (c - '0');
        if (v > static_cast<__int128>(kMaxAbsEntry) * 10)
            throw ParseError("entry magnitude exceeds the supported range", num.line, num.column);
    }
    std::string frac = num.frac_digits;
    frac.resize(static_cast<std::size_t>(scale_digits), '0');
    for (char c : frac) {
        v = v * 10 + (c - '0');
        if (v > static_cast<__int128>(kMaxAbsEntry) * 10)
            throw ParseError("entry magnitude exceeds the supported range", num.line, num.column);
    }
    if (num.negative) v = -v;
    if (v > kMaxAbsEntry || v < -kMaxAbsEntry)
        throw ParseError("entry magnitude exceeds the supported range", num.line, num.column);
    return static_cast<Value>(v);
}

}  // namespace detail

inline ParsedMatrix parse_matrix(std::string_view text) {
    struct Tok {
        std::string_view text;
        int line;
        int column;
    };

    // Collect tokens of significant lines; comment ('#') and blank lines are skipped.
    std::vector<std::vector<Tok>> rows;
    int line_no = 0;
    std::size_t cursor = 0;
    while (cursor <= text.size()) {
        std::size_t eol = text.find('\n', cursor);
        std::string_view line = text.substr(cursor, eol == std::string_view::npos
                                                       ? text.size() - cursor
                                                       : eol - cursor);
        cursor = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        std::vector<Tok> toks;
        std::size_t i = 0;
        bool comment = false;
        while (i < line.size()) {
            if (line[i] == ' ' || line[i] == '\t') {
                ++i;
                continue;
            }
            if (line[i] == '#') {
                comment = true;
                break;
            }
            std::size_t start = i;
            while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
            toks.push_back({line.substr(start, i - start), line_no, static_cast<int>(start) + 1});
        }
        if (comment && toks.empty()) continue;
        if (!toks.empty()) rows.push_back(std::move(toks));
    }

    if (rows.empty()) throw ParseError("missing matrix order", 1, 1);
    if (rows[0].size() != 1)
        throw ParseError("expected a single matrix order on the first significant line",
                         rows[0][0].line, rows[0][0].column);

    const Tok& head = rows[0][0];
    detail::RawNumber order_tok = detail::parse_number_token(head.text, head.line, head.column);
    if (order_tok.negative || !order_tok.frac_digits.empty())
        throw ParseError("matrix order must be a positive integer", head.line, head.column);
    long long n_ll = 0;
    for (char c : order_tok.int_digits) {
        n_ll = n_ll * 10 + (c - '0');
        if (n_ll > kMaxOrder)
            throw ParseError("matrix order exceeds the supported maximum of " +
                                 std::to_string(kMaxOrder),
                             head.line, head.column);
    }
    if (n_ll < 1) throw ParseError("matrix order must be a positive integer", head.line, head.column);
    const int n = static_cast<int>(n_ll);

    if (static_cast<int>(rows.size()) - 1 < n) {
        throw ParseError("expected " + std::to_string(n) + " matrix rows, found " +
                             std::to_string(rows.size() - 1),
                         line_no, 1);
    }
    if (static_cast<int>(rows.size()) - 1 > n) {
        const Tok& extra = rows[static_cast<std::size_t>(n) + 1][0];
        throw ParseError("unexpected content after the matrix rows", extra.line, extra.column);
    }

    std::vector<std::vector<detail::RawNumber>> raw(n);
    int scale_digits = 0;
    for (int i = 1; i <= n; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i)];
        if (static_cast<int>(row.size()) != n)
            throw ParseError("expected " + std::to_string(n) + " entries in row " +
                                 std::to_string(i) + ", found " + std::to_string(row.size()),
                             row[0].line, row[0].column);
        raw[i - 1].reserve(row.size());
        for (const Tok& t : row) {
            raw[i - 1].push_back(detail::parse_number_token(t.text, t.line, t.column));
            scale_digits = std::max(scale_digits,
                                    static_cast<int>(raw[i - 1].back().frac_digits.size()));
        }
    }

    SymmetricMatrix m(n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            const Value v = detail::scaled_value(raw[i - 1][j - 1], scale_digits);
            if (j >= i) {
                m.set(i, j, v);
            } else if (m(j, i) != v) {
                const auto& t = raw[i - 1][j - 1];
                throw ParseError("asymmetric at (" + std::to_string(j) + "," + std::to_string(i) +
                                     ")/(" + std::to_string(i) + "," + std::to_string(j) + ")",
                                 t.line, t.column);
            }
        }
    return ParsedMatrix{std::move(m), scale_digits};
}

inline std::string serialize_matrix(const SymmetricMatrix& C) {
    std::string out = std::to_string(C.size());
    out += '\n';
    for (int i = 1; i <= C.size(); ++i) {
        for (int j = 1; j <= C.size(); ++j) {
            if (j > 1) out += ' ';
            out += std::to_string(C(i, j));
        }
        out += '\n';
    }
    return out;
}

/// Renders v / 10^scale_digits as an exact decimal string.
inline std::string format_scaled(Value v, int scale_digits) {
    if (scale_digits == 0) return std::to_string(v);
    const bool neg = v < 0;
    std::string digits = std::to_string(neg ? -v : v);
    if (static_cast<int>(digits.size()) <= scale_digits)
        digits.insert(digits.begin(), scale_digits + 1 - digits.size(), '0');
    std::string frac = digits.substr(digits.size() - scale_digits);
    std::string whole = digits.substr(0, digits.size() - scale_digits);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    std::string out = neg ? "-" : "";
    out += whole;
    if (!frac.empty()) {
        out += '.';
        out += frac;
    }
    return out;
}

}  // namespace demi
