#ifndef HODGEKIT_IO_HPP
#define HODGEKIT_IO_HPP

#include <hodgekit/cell_complex.hpp>
#include <hodgekit/errors.hpp>
#include <hodgekit/matrix.hpp>
#include <hodgekit/numeric.hpp>

#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace hodgekit {

namespace io_detail {

/// Lines of a stream with comments ('#' to end of line) stripped and blank
/// lines dropped; keeps 1-based line numbers for error reporting.
inline std::vector<std::pair<std::size_t, std::vector<std::string>>>
tokenized_lines(std::istream& in)
{
    std::vector<std::pair<std::size_t, std::vector<std::string>>> out;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream tokens(line);
        std::vector<std::string> words;
        std::string word;
        while (tokens >> word)
            words.push_back(word);
        if (!words.empty())
            out.emplace_back(number, std::move(words));
    }
    return out;
}

inline void expect_header(const std::vector<std::pair<std::size_t, std::vector<std::string>>>& lines,
                          const std::string& name, const char* keyword)
{
    if (lines.empty() || lines[0].second.size() != 2 || lines[0].second[0] != keyword ||
        lines[0].second[1] != "v1")
        throw ParseError(name, lines.empty() ? 1 : lines[0].first,
                         std::string("expected header '") + keyword + " v1'");
}

inline std::size_t parse_nat(const std::string& name, std::size_t line, const std::string& token)
{
    std::size_t value = 0;
    for (char c : token) {
        if (c < '0' || c > '9')
            throw ParseError(name, line, "expected a non-negative integer, got '" + token + "'");
        value = value * 10 + static_cast<std::size_t>(c - '0');
    }
    if (token.empty())
        throw ParseError(name, line, "expected a non-negative integer");
    return value;
}

inline std::int64_t parse_int(const std::string& name, std::size_t line, const std::string& token)
{
    try {
        std::size_t used = 0;
        std::int64_t v = std::stoll(token, &used);
        if (used != token.size())
            throw std::invalid_argument(token);
        return v;
    } catch (const std::exception&) {
        throw ParseError(name, line, "expected an integer, got '" + token + "'");
    }
}

} // namespace io_detail

// --- cellcomplex v1 -----------------------------------------------------------

inline CellComplex parse_complex(std::istream& in, const std::string& name)
{
    using io_detail::parse_int;
    using io_detail::parse_nat;
    auto lines = io_detail::tokenized_lines(in);
    io_detail::expect_header(lines, name, "cellcomplex");

    std::size_t cursor = 1;
    if (cursor >= lines.size() || lines[cursor].second[0] != "dim" ||
        lines[cursor].second.size() != 2)
        throw ParseError(name, cursor < lines.size() ? lines[cursor].first : 0,
                         "expected 'dim <n>' after the header");
    std::size_t top = parse_nat(name, lines[cursor].first, lines[cursor].second[1]);
    ++cursor;

    CellComplex out(top);
    std::map<std::string, std::size_t> declared; // id -> declaration line
    // First pass: declarations, so bd lines may reference cells in any order.
    for (std::size_t i = cursor; i < lines.size(); ++i) {
        const auto& [line, words] = lines[i];
        if (words[0] == "cell") {
            if (words.size() != 3)
                throw ParseError(name, line, "expected 'cell <id> <k>'");
            std::size_t k = parse_nat(name, line, words[2]);
            if (declared.count(words[1]))
                throw ParseError(name, line, "duplicate cell id '" + words[1] + "'");
            if (k > top)
                throw ParseError(name, line, "cell dimension exceeds declared dim");
            declared.emplace(words[1], line);
            out.add_cell(words[1], k);
        } else if (words[0] != "bd") {
            throw ParseError(name, line, "unknown directive '" + words[0] + "'");
        }
    }
    std::map<std::string, std::size_t> seen_bd;
    for (std::size_t i = cursor; i < lines.size(); ++i) {
        const auto& [line, words] = lines[i];
        if (words[0] != "bd")
            continue;
        if (words.size() < 2)
            throw ParseError(name, line, "expected 'bd <id> <coef>:<face> ...'");
        const std::string& id = words[1];
        if (!declared.count(id))
            throw ParseError(name, line, "boundary for undeclared cell '" + id + "'");
        if (seen_bd.count(id))
            throw ParseError(name, line, "duplicate boundary for cell '" + id + "'");
        seen_bd.emplace(id, line);
        auto [k, index] = out.locate(id);
        (void)index;
        if (k == 0)
            throw ParseError(name, line, "0-cell '" + id + "' cannot have a boundary");
        BoundaryChain chain;
        for (std::size_t w = 2; w < words.size(); ++w) {
            auto colon = words[w].find(':');
            if (colon == std::string::npos)
                throw ParseError(name, line, "expected '<coef>:<face>', got '" + words[w] + "'");
            std::int64_t coef = parse_int(name, line, words[w].substr(0, colon));
            std::string face = words[w].substr(colon + 1);
            if (!out.has_cell(face))
                throw ParseError(name, line, "unknown face id '" + face + "'");
            auto [fk, findex] = out.locate(face);
            if (fk + 1 != k)
                throw ParseError(name, line,
                                 "face '" + face + "' has dimension " + std::to_string(fk) +
                                     ", expected " + std::to_string(k - 1));
            chain.emplace_back(findex, coef);
        }
        out.set_boundary(id, std::move(chain));
    }
    return out;
}

inline CellComplex load_complex(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError(path, 0, "cannot open file");
    return parse_complex(in, path);
}

inline std::string complex_to_text(const CellComplex& x)
{
    std::ostringstream out;
    out << "cellcomplex v1\n";
    out << "dim " << x.top_dim() << "\n";
    for (std::size_t k = 0; k <= x.top_dim(); ++k)
        for (std::size_t i = 0; i < x.size(k); ++i)
            out << "cell " << x.id(k, i) << " " << k << "\n";
    for (std::size_t k = 1; k <= x.top_dim(); ++k)
        for (std::size_t i = 0; i < x.size(k); ++i) {
            const BoundaryChain& chain = x.boundary_chain(k, i);
            if (chain.empty())
                continue;
            out << "bd " << x.id(k, i);
            for (const auto& [face, coef] : chain)
                out << " " << coef << ":" << x.id(k - 1, face);
            out << "\n";
        }
    return out.str();
}

// --- subcomplex v1 ------------------------------------------------------------

inline Subcomplex parse_subcomplex(std::istream& in, const std::string& name,
                                   const CellComplex& parent)
{
    auto lines = io_detail::tokenized_lines(in);
    io_detail::expect_header(lines, name, "subcomplex");
    Subcomplex out(parent);
    std::map<std::string, std::size_t> seen;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& [line, words] = lines[i];
        if (words[0] != "sel" || words.size() != 2)
            throw ParseError(name, line, "expected 'sel <id>'");
        if (seen.count(words[1]))
            throw ParseError(name, line, "duplicate selection '" + words[1] + "'");
        seen.emplace(words[1], line);
        if (!parent.has_cell(words[1]))
            throw ParseError(name, line, "unknown cell id '" + words[1] + "'");
        auto [k, index] = parent.locate(words[1]);
        out.insert(k, index);
    }
    return out;
}

inline Subcomplex load_subcomplex(const std::string& path, const CellComplex& parent)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError(path, 0, "cannot open file");
    return parse_subcomplex(in, path, parent);
}

inline std::string subcomplex_to_text(const Subcomplex& s)
{
    std::ostringstream out;
    out << "subcomplex v1\n";
    for (const std::string& id : s.selected_ids())
        out << "sel " << id << "\n";
    return out.str();
}

// --- weights v1 ----------------------------------------------------------------

/// Parsed weight assignments by cell id; completeness against a complex is
/// checked when the weighted complex is assembled.
inline std::map<std::string, Rat> parse_weights(std::istream& in, const std::string& name,
                                                const CellComplex& parent)
{
    auto lines = io_detail::tokenized_lines(in);
    io_detail::expect_header(lines, name, "weights");
    std::map<std::string, Rat> out;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& [line, words] = lines[i];
        if (words[0] != "w" || words.size() != 3)
            throw ParseError(name, line, "expected 'w <id> <p>/<q>'");
        if (!parent.has_cell(words[1]))
            throw ParseError(name, line, "unknown cell id '" + words[1] + "'");
        if (out.count(words[1]))
            throw ParseError(name, line, "duplicate weight for '" + words[1] + "'");
        const std::string& value = words[2];
        auto slash = value.find('/');
        std::string p = slash == std::string::npos ? value : value.substr(0, slash);
        std::string q = slash == std::string::npos ? "1" : value.substr(slash + 1);
        std::size_t pn = io_detail::parse_nat(name, line, p);
        std::size_t qn = io_detail::parse_nat(name, line, q);
        if (pn == 0 || qn == 0)
            throw ParseError(name, line, "weights must be positive");
        out.emplace(words[1], Rat(static_cast<long>(pn), static_cast<long>(qn)));
    }
    return out;
}

inline std::map<std::string, Rat> load_weights(const std::string& path, const CellComplex& parent)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError(path, 0, "cannot open file");
    return parse_weights(in, path, parent);
}

// --- cochain v1 ------------------------------------------------------------------

/// Rational literal: optional sign, "p" or "p/q".
inline Rat parse_rational(const std::string& name, std::size_t line, const std::string& token)
{
    bool negative = false;
    std::string body = token;
    if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
        negative = body[0] == '-';
        body.erase(0, 1);
    }
    auto slash = body.find('/');
    std::string p = slash == std::string::npos ? body : body.substr(0, slash);
    std::string q = slash == std::string::npos ? "1" : body.substr(slash + 1);
    if (p.empty() || q.empty())
        throw ParseError(name, line, "expected a rational, got '" + token + "'");
    for (const std::string& part : {p, q})
        for (char c : part)
            if (c < '0' || c > '9')
                throw ParseError(name, line, "expected a rational, got '" + token + "'");
    Int den(q);
    if (den == 0)
        throw ParseError(name, line, "zero denominator in '" + token + "'");
    Rat value(Int(p), den);
    return negative ? -value : value;
}

struct Cochain {
    std::size_t degree = 0;
    RatVec values; ///< one entry per cell of that degree, parent order
};

inline Cochain parse_cochain(std::istream& in, const std::string& name, const CellComplex& parent)
{
    auto lines = io_detail::tokenized_lines(in);
    io_detail::expect_header(lines, name, "cochain");
    if (lines.size() < 2 || lines[1].second.size() != 2 || lines[1].second[0] != "deg")
        throw ParseError(name, lines.size() < 2 ? 0 : lines[1].first, "expected 'deg <k>'");
    Cochain out;
    out.degree = io_detail::parse_nat(name, lines[1].first, lines[1].second[1]);
    if (out.degree > parent.top_dim())
        throw ParseError(name, lines[1].first, "degree exceeds the complex dimension");
    out.values.assign(parent.size(out.degree), Rat(0));
    std::map<std::string, std::size_t> seen;
    for (std::size_t i = 2; i < lines.size(); ++i) {
        const auto& [line, words] = lines[i];
        if (words[0] != "c" || words.size() != 3)
            throw ParseError(name, line, "expected 'c <id> <value>'");
        if (seen.count(words[1]))
            throw ParseError(name, line, "duplicate entry for '" + words[1] + "'");
        seen.emplace(words[1], line);
        if (!parent.has_cell(words[1]))
            throw ParseError(name, line, "unknown cell id '" + words[1] + "'");
        auto [k, index] = parent.locate(words[1]);
        if (k != out.degree)
            throw ParseError(name, line, "cell '" + words[1] + "' is not of the declared degree");
        out.values[index] = parse_rational(name, line, words[2]);
    }
    return out;
}

inline Cochain load_cochain(const std::string& path, const CellComplex& parent)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError(path, 0, "cannot open file");
    return parse_cochain(in, path, parent);
}

// --- glz v1 (integer matrix group generators) -----------------------------------

inline std::vector<IntMatrix> parse_group_generators(std::istream& in, const std::string& name,
                                                     std::size_t* rank_out = nullptr)
{
    auto lines = io_detail::tokenized_lines(in);
    io_detail::expect_header(lines, name, "glz");
    if (lines.size() < 2 || lines[1].second.size() != 2 || lines[1].second[0] != "rank")
        throw ParseError(name, lines.size() < 2 ? 0 : lines[1].first, "expected 'rank <m>'");
    std::size_t m = io_detail::parse_nat(name, lines[1].first, lines[1].second[1]);
    if (rank_out)
        *rank_out = m;

    std::vector<IntMatrix> generators;
    std::size_t i = 2;
    while (i < lines.size()) {
        const auto& [line, words] = lines[i];
        if (words[0] != "gen" || words.size() != 1)
            throw ParseError(name, line, "expected 'gen'");
        ++i;
        IntMatrix g(m, m);
        for (std::size_t r = 0; r < m; ++r, ++i) {
            if (i >= lines.size())
                throw ParseError(name, line, "generator block truncated");
            const auto& [rline, row] = lines[i];
            if (row.size() != m)
                throw ParseError(name, rline,
                                 "expected " + std::to_string(m) + " entries in generator row");
            for (std::size_t c = 0; c < m; ++c) {
                try {
                    g(r, c) = Int(row[c]);
                } catch (const std::exception&) {
                    throw ParseError(name, rline, "expected an integer, got '" + row[c] + "'");
                }
            }
        }
        generators.push_back(std::move(g));
    }
    return generators;
}

inline std::vector<IntMatrix> load_group_generators(const std::string& path,
                                                    std::size_t* rank_out = nullptr)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError(path, 0, "cannot open file");
    return parse_group_generators(in, path, rank_out);
}

} // namespace hodgekit

#endif // HODGEKIT_IO_HPP
