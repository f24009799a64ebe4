#include "arbor/tree.hpp"

#include <algorithm>
#include <sstream>

#include "arbor/errors.hpp"

namespace arbor {

SphericalIndex::SphericalIndex(std::vector<int> prefix, std::vector<int> period)
    : prefix_(std::move(prefix)), period_(std::move(period)) {
    if (period_.empty()) throw ParseError("spherical index needs a nonempty period");
    for (int e : prefix_)
        if (e < 2) throw ParseError("spherical index entries must be >= 2");
    for (int e : period_)
        if (e < 2) throw ParseError("spherical index entries must be >= 2");
}

SphericalIndex SphericalIndex::constant(int d) { return SphericalIndex({}, {d}); }

int SphericalIndex::entry(int level) const {
    if (level < 1) throw ParseError("index entry levels are 1-based");
    std::size_t i = static_cast<std::size_t>(level - 1);
    if (i < prefix_.size()) return prefix_[i];
    return period_[(i - prefix_.size()) % period_.size()];
}

bool SphericalIndex::is_constant() const {
    if (period_.size() != 1) {
        for (int e : period_)
            if (e != period_[0]) return false;
    }
    for (int e : prefix_)
        if (e != period_[0]) return false;
    return true;
}

int SphericalIndex::constant_arity() const {
    if (!is_constant()) throw InternalError("constant_arity on a non-constant index");
    return period_[0];
}

std::uint64_t SphericalIndex::level_width(int n, const Limits& lim) const {
    if (n < 0) throw ParseError("negative level");
    if (n > lim.max_depth)
        throw CapacityError("level " + std::to_string(n) + " exceeds max depth " +
                            std::to_string(lim.max_depth));
    std::uint64_t w = 1;
    for (int k = 1; k <= n; ++k) {
        w *= static_cast<std::uint64_t>(entry(k));
        if (w > lim.max_points)
            throw CapacityError("level width at level " + std::to_string(k) +
                                " exceeds " + std::to_string(lim.max_points) + " points");
    }
    return w;
}

bool SphericalIndex::single_digit_letters() const {
    for (int e : prefix_)
        if (e > 10) return false;
    for (int e : period_)
        if (e > 10) return false;
    return true;
}

SphericalIndex parse_index_spec(const std::string& text) {
    auto parse_ints = [](const std::string& s) {
        std::vector<int> out;
        std::istringstream in(s);
        int v;
        while (in >> v) out.push_back(v);
        if (!in.eof()) throw ParseError("bad integer list in index spec: " + s);
        return out;
    };
    auto bar = text.find('|');
    if (bar == std::string::npos) {
        auto ints = parse_ints(text);
        if (ints.size() != 1)
            throw ParseError("index spec without '|' must be a single arity: " + text);
        return SphericalIndex::constant(ints[0]);
    }
    return SphericalIndex(parse_ints(text.substr(0, bar)), parse_ints(text.substr(bar + 1)));
}

std::string render_index_spec(const SphericalIndex& idx) {
    if (idx.prefix().empty() && idx.period().size() == 1)
        return std::to_string(idx.period()[0]);
    std::ostringstream out;
    for (std::size_t i = 0; i < idx.prefix().size(); ++i)
        out << (i ? " " : "") << idx.prefix()[i];
    out << " | ";
    for (std::size_t i = 0; i < idx.period().size(); ++i)
        out << (i ? " " : "") << idx.period()[i];
    return out.str();
}

void validate_vertex(const SphericalIndex& idx, const VertexWord& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        int bound = idx.entry(static_cast<int>(i) + 1);
        if (v[i] < 0 || v[i] >= bound)
            throw ParseError("vertex letter " + std::to_string(v[i]) + " out of range at level " +
                             std::to_string(i + 1));
    }
}

std::string render_vertex(const SphericalIndex& idx, const VertexWord& v) {
    std::ostringstream out;
    if (idx.single_digit_letters()) {
        for (Letter l : v) out << l;
    } else {
        for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
    }
    return out.str();
}

VertexWord parse_vertex(const SphericalIndex& idx, const std::string& text) {
    VertexWord v;
    if (text.empty() || text == "-") return v;
    if (text.find(',') != std::string::npos || !idx.single_digit_letters()) {
        std::istringstream in(text);
        std::string tok;
        while (std::getline(in, tok, ','))
            v.push_back(std::stoi(tok));
    } else {
        for (char c : text) {
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw ParseError("bad vertex letter '" + std::string(1, c) + "'");
            v.push_back(c - '0');
        }
    }
    validate_vertex(idx, v);
    return v;
}

VertexWord EventuallyPeriodicPath::truncate(int n) const {
    if (n < 0) throw ParseError("negative truncation depth");
    VertexWord out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        std::size_t k = static_cast<std::size_t>(i);
        if (k < prefix.size())
            out.push_back(prefix[k]);
        else
            out.push_back(period[(k - prefix.size()) % period.size()]);
    }
    return out;
}

void validate_path(const SphericalIndex& idx, const EventuallyPeriodicPath& p) {
    if (p.period.empty()) throw ParseError("path period must be nonempty");
    // Check letters over one full sweep of the index period past the prefix.
    int probe = static_cast<int>(p.prefix.size() + p.period.size() *
                                 (idx.period().size() + idx.prefix().size() + 1));
    validate_vertex(idx, p.truncate(probe));
}

std::string render_path(const SphericalIndex& idx, const EventuallyPeriodicPath& p) {
    std::ostringstream out;
    out << render_vertex(idx, p.prefix);
    if (p.period.size() == 1 && idx.single_digit_letters()) {
        out << p.period[0] << '*';
    } else {
        out << '(' << render_vertex(idx, p.period) << ")*";
    }
    return out.str();
}

EventuallyPeriodicPath parse_path(const SphericalIndex& idx, const std::string& text) {
    if (text.empty() || text.back() != '*')
        throw ParseError("path must end with '*': " + text);
    std::string body = text.substr(0, text.size() - 1);
    EventuallyPeriodicPath p;
    auto open = body.find('(');
    if (open != std::string::npos) {
        if (body.empty() || body.back() != ')')
            throw ParseError("unbalanced parentheses in path: " + text);
        p.prefix = parse_vertex(idx, body.substr(0, open));
        std::string per = body.substr(open + 1, body.size() - open - 2);
        // letters of the period live past the prefix; validate after assembly
        if (per.empty()) throw ParseError("empty period in path: " + text);
        if (per.find(',') != std::string::npos || !idx.single_digit_letters()) {
            std::istringstream in(per);
            std::string tok;
            while (std::getline(in, tok, ',')) p.period.push_back(std::stoi(tok));
        } else {
            for (char c : per) {
                if (!std::isdigit(static_cast<unsigned char>(c)))
                    throw ParseError("bad path letter '" + std::string(1, c) + "'");
                p.period.push_back(c - '0');
            }
        }
    } else {
        // "0*" style: everything but the final letter is prefix
        if (body.empty()) throw ParseError("empty path: " + text);
        VertexWord all = parse_vertex(idx, body);
        if (all.empty()) throw ParseError("empty path: " + text);
        p.prefix.assign(all.begin(), all.end() - 1);
        p.period = {all.back()};
    }
    validate_path(idx, p);
    return p;
}

bool Cylinder::contained_in(const Cylinder& other) const {
    if (other.base.size() > base.size()) return false;
    return std::equal(other.base.begin(), other.base.end(), base.begin());
}

PathDistance path_distance(const VertexWord& t, const VertexWord& w, int d) {
    if (d < 2) throw ParseError("arity must be >= 2");
    std::size_t m = 0;
    while (m < t.size() && m < w.size() && t[m] == w[m]) ++m;
    if (m > 62) throw CapacityError("path distance denominator overflows past depth 62");
    std::uint64_t den = 1;
    for (std::size_t i = 0; i < m; ++i) den *= static_cast<std::uint64_t>(d);
    return {1, den};
}

std::uint64_t vertex_to_ordinal(const SphericalIndex& idx, const VertexWord& v) {
    std::uint64_t ord = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        ord = ord * static_cast<std::uint64_t>(idx.entry(static_cast<int>(i) + 1)) +
              static_cast<std::uint64_t>(v[i]);
    return ord;
}

VertexWord ordinal_to_vertex(const SphericalIndex& idx, int level, std::uint64_t ord) {
    VertexWord v(static_cast<std::size_t>(level));
    for (int i = level - 1; i >= 0; --i) {
        std::uint64_t b = static_cast<std::uint64_t>(idx.entry(i + 1));
        v[static_cast<std::size_t>(i)] = static_cast<Letter>(ord % b);
        ord /= b;
    }
    return v;
}

} // namespace arbor
