#include "arbor/quotients.hpp"

#include <limits>
#include <map>
#include <sstream>

#include "arbor/errors.hpp"

namespace arbor {

namespace {

Limits unbounded_order(Limits lim) {
    lim.max_order = std::numeric_limits<unsigned long long>::max();
    return lim;
}

unsigned long long group_order(std::size_t degree, const std::vector<Perm>& gens,
                               const Limits& lim) {
    StabilizerChain chain(degree);
    for (const Perm& g : gens) chain.extend(g);
    return chain.order(lim);
}

} // namespace

std::vector<Word> generator_words(const RecursionSystem& sys) {
    std::vector<Word> out;
    for (std::size_t i = 0; i < sys.num_generators(); ++i)
        out.push_back({static_cast<std::int32_t>(i) + 1});
    return out;
}

FiniteQuotient level_quotient(const std::shared_ptr<const RecursionSystem>& sys,
                              const std::vector<Word>& gen_words, int n,
                              const Limits& lim) {
    if (n < 1) throw ParseError("quotient level must be >= 1");
    FiniteQuotient q;
    q.sys = sys;
    q.level = n;
    q.points = sys->index().level_width(n, lim);
    for (const Word& w : gen_words) q.gens.push_back({word_reduce(w), sys->truncate(w, n, lim)});
    return q;
}

unsigned long long FiniteQuotient::order(const Limits& lim) const {
    StabilizerChain chain(static_cast<std::size_t>(points));
    for (const auto& g : gens) chain.extend(g.perm);
    return chain.order(lim);
}

bool FiniteQuotient::transitive() const {
    std::vector<bool> seen(static_cast<std::size_t>(points), false);
    std::vector<std::uint32_t> stack{0};
    seen[0] = true;
    std::uint64_t count = 1;
    while (!stack.empty()) {
        std::uint32_t p = stack.back();
        stack.pop_back();
        for (const auto& g : gens) {
            std::uint32_t q = g.perm[p];
            if (!seen[q]) {
                seen[q] = true;
                ++count;
                stack.push_back(q);
            }
        }
    }
    return count == points;
}

StabilizerWords stabilizer_words(const std::shared_ptr<const RecursionSystem>& sys,
                                 const std::vector<Word>& group_gens,
                                 const VertexWord& v, const Limits& lim) {
    StabilizerWords out;
    out.vertex = v;
    std::map<VertexWord, std::size_t> index;
    out.orbit.push_back(v);
    out.transversal.push_back({});
    index.emplace(v, 0);
    for (std::size_t head = 0; head < out.orbit.size(); ++head) {
        for (const Word& g : group_gens) {
            VertexWord img = sys->apply(g, out.orbit[head]);
            if (!index.count(img)) {
                index.emplace(img, out.orbit.size());
                out.orbit.push_back(img);
                out.transversal.push_back(word_concat(word_reduce(g), out.transversal[head]));
                if (out.orbit.size() > lim.max_points)
                    throw CapacityError("vertex orbit exceeds " +
                                        std::to_string(lim.max_points) + " points");
            }
        }
    }
    std::map<Word, bool> seen;
    for (std::size_t i = 0; i < out.orbit.size(); ++i) {
        for (const Word& g : group_gens) {
            std::size_t j = index.at(sys->apply(g, out.orbit[i]));
            Word s = word_concat(word_inverse(out.transversal[j]),
                                 word_concat(word_reduce(g), out.transversal[i]));
            if (s.empty()) continue;
            if (seen.emplace(s, true).second) out.gens.push_back(std::move(s));
        }
    }
    return out;
}

DiscriminantLevel discriminant_level(const std::shared_ptr<const RecursionSystem>& sys,
                                     const std::vector<Word>& group_gens,
                                     const EventuallyPeriodicPath& basepoint, int m, int n,
                                     const Limits& lim) {
    if (m < 0 || m > n) throw ParseError("need 0 <= m <= n");
    DiscriminantLevel cell;
    cell.m = m;
    cell.n = n;
    cell.x_m = basepoint.truncate(m);
    cell.x_n = basepoint.truncate(n);

    StabilizerWords sm = stabilizer_words(sys, group_gens, cell.x_m, lim);
    cell.ambient_gens = sm.gens;

    // orbit of x_n under the stabilizer of x_m, with transversal words
    std::map<VertexWord, std::size_t> index;
    std::vector<Word> transversal;
    cell.orbit.push_back(cell.x_n);
    transversal.push_back({});
    index.emplace(cell.x_n, 0);
    for (std::size_t head = 0; head < cell.orbit.size(); ++head) {
        for (const Word& g : sm.gens) {
            VertexWord img = sys->apply(g, cell.orbit[head]);
            if (!index.count(img)) {
                index.emplace(img, cell.orbit.size());
                cell.orbit.push_back(img);
                transversal.push_back(word_concat(g, transversal[head]));
                if (cell.orbit.size() > lim.max_points)
                    throw CapacityError("orbit exceeds " + std::to_string(lim.max_points) +
                                        " points");
            }
        }
    }

    // Schreier step inside the stabilizer of x_m gives the stabilizer of x_n;
    // its action on the orbit is the cell group, and the kernel of that action
    // is exactly the relative core.
    std::map<Perm, bool> perm_seen;
    std::vector<Perm> perms;
    for (std::size_t i = 0; i < cell.orbit.size(); ++i) {
        for (const Word& g : sm.gens) {
            std::size_t j = index.at(sys->apply(g, cell.orbit[i]));
            Word s = word_concat(word_inverse(transversal[j]),
                                 word_concat(g, transversal[i]));
            if (s.empty()) continue;
            Perm p(cell.orbit.size());
            for (std::size_t k = 0; k < cell.orbit.size(); ++k) {
                auto it = index.find(sys->apply(s, cell.orbit[k]));
                if (it == index.end())
                    throw InternalError("stabilizer element leaves its own orbit");
                p[k] = static_cast<std::uint32_t>(it->second);
            }
            if (perm_is_identity(p)) continue;
            if (perm_seen.emplace(p, true).second) {
                cell.gens.push_back({std::move(s), p});
                perms.push_back(std::move(p));
            }
        }
    }

    cell.order = group_order(cell.orbit.size(), perms, unbounded_order(lim));
    if (cell.order <= lim.max_order) cell.fp = fingerprint(cell.orbit.size(), perms, lim);
    return cell;
}

ConnectingMap connecting_map(const std::shared_ptr<const RecursionSystem>& sys,
                             const DiscriminantLevel& src, const DiscriminantLevel& dst,
                             const Limits& lim) {
    ConnectingMap map;
    map.src_m = src.m;
    map.src_n = src.n;
    map.dst_m = dst.m;
    map.dst_n = dst.n;

    std::map<VertexWord, std::size_t> dst_index;
    for (std::size_t i = 0; i < dst.orbit.size(); ++i) dst_index.emplace(dst.orbit[i], i);

    std::size_t ds = src.orbit.size();
    std::size_t dd = dst.orbit.size();
    std::vector<Perm> images;   // source generators evaluated on the target orbit
    std::vector<Perm> combined; // simultaneous action on both orbits
    for (const auto& g : src.gens) {
        Perm q(dd);
        for (std::size_t i = 0; i < dd; ++i) {
            auto it = dst_index.find(sys->apply(g.word, dst.orbit[i]));
            if (it == dst_index.end())
                throw InternalError("connecting map leaves the target orbit");
            q[i] = static_cast<std::uint32_t>(it->second);
        }
        Perm c(ds + dd);
        for (std::size_t i = 0; i < ds; ++i) c[i] = g.perm[i];
        for (std::size_t i = 0; i < dd; ++i)
            c[ds + i] = static_cast<std::uint32_t>(ds + q[i]);
        images.push_back(std::move(q));
        combined.push_back(std::move(c));
    }

    Limits big = unbounded_order(lim);
    unsigned long long h = group_order(ds + dd, combined, big);
    unsigned long long s = group_order(dd, images, big);
    map.well_defined = (h == src.order);
    map.injective = map.well_defined && (s == src.order);
    map.surjective = (s == dst.order);
    map.kernel_size = s ? h / s : 1;
    return map;
}

const DiscriminantLevel* DiscriminantTower::cell(int m, int n) const {
    for (const auto& c : cells)
        if (c.m == m && c.n == n) return &c;
    return nullptr;
}

DiscriminantTower discriminant_tower(const std::shared_ptr<const RecursionSystem>& sys,
                                     const std::vector<Word>& gen_words,
                                     const EventuallyPeriodicPath& basepoint, int M, int N,
                                     const Limits& lim) {
    if (M < 0 || M >= N) throw ParseError("tower needs 0 <= M < N");
    DiscriminantTower t;
    t.basepoint = basepoint;
    t.M = M;
    t.N = N;
    for (int m = M; m < N; ++m)
        for (int n = m + 1; n <= N; ++n)
            t.cells.push_back(discriminant_level(sys, gen_words, basepoint, m, n, lim));
    auto check = [&](const ConnectingMap& map) {
        if (!map.well_defined)
            throw InternalError("connecting map (" + std::to_string(map.src_m) + "," +
                                std::to_string(map.src_n) + ") -> (" +
                                std::to_string(map.dst_m) + "," + std::to_string(map.dst_n) +
                                ") is not well defined");
        if (!map.surjective)
            throw InternalError("connecting map (" + std::to_string(map.src_m) + "," +
                                std::to_string(map.src_n) + ") -> (" +
                                std::to_string(map.dst_m) + "," + std::to_string(map.dst_n) +
                                ") is not surjective");
    };
    for (const auto& c : t.cells) {
        if (c.n - 1 > c.m) {
            t.column_maps.push_back(connecting_map(sys, c, *t.cell(c.m, c.n - 1), lim));
            check(t.column_maps.back());
        }
        if (c.m + 1 < c.n) {
            t.row_maps.push_back(connecting_map(sys, c, *t.cell(c.m + 1, c.n), lim));
            check(t.row_maps.back());
        }
    }
    return t;
}

std::vector<ChainRow> chain_report(const std::shared_ptr<const RecursionSystem>& sys,
                                   const std::vector<Word>& gen_words,
                                   const EventuallyPeriodicPath& basepoint, int N,
                                   const Limits& lim) {
    std::vector<ChainRow> rows;
    for (int n = 1; n <= N; ++n) {
        ChainRow row;
        row.n = n;
        VertexWord xn = basepoint.truncate(n);
        StabilizerWords st = stabilizer_words(sys, gen_words, xn, lim);
        row.g_over_gn = st.orbit.size();
        row.transitive = (row.g_over_gn == sys->index().level_width(n, lim));
        row.g_over_cn = level_quotient(sys, gen_words, n, lim).order(lim);
        row.gn_over_cn = discriminant_level(sys, gen_words, basepoint, 0, n, lim).order;
        if (row.transitive && row.g_over_cn != row.g_over_gn * row.gn_over_cn)
            throw InternalError("orbit-stabilizer identity fails at level " +
                                std::to_string(n));
        rows.push_back(std::move(row));
    }
    return rows;
}

StabilityVerdict stability_probe(const DiscriminantTower& tower) {
    if (tower.N - tower.M < 3)
        throw ParseError("stability probe needs a window of at least 3 levels");
    StabilityVerdict v;

    // stable: every judged column constant with one common fingerprint, and
    // every judged row map an isomorphism
    bool stable = true;
    std::optional<Fingerprint> common;
    for (int m = tower.M; m + 2 <= tower.N && stable; ++m) {
        for (int n = m + 2; n <= tower.N && stable; ++n) {
            const DiscriminantLevel* c = tower.cell(m, n);
            if (!c->fp) {
                stable = false;
                break;
            }
            if (!common)
                common = c->fp;
            else if (!(*common == *c->fp))
                stable = false;
        }
    }
    if (stable && common) {
        for (const auto& map : tower.row_maps)
            if (map.src_n >= map.src_m + 2 && map.src_n >= map.dst_m + 2 &&
                !map.isomorphism())
                stable = false;
        for (const auto& map : tower.column_maps)
            if (map.src_n >= map.src_m + 2 && map.dst_n >= map.dst_m + 2 &&
                !map.isomorphism())
                stable = false;
    }
    if (stable && common) {
        v.kind = StabilityVerdict::stable_evidence;
        v.stable_fp = common;
        v.detail = "all judged cells share fingerprint (" + common->render() + ")";
        return v;
    }

    // wild: within every column with at least two judged cells the order
    // strictly grows with n
    bool wild = false;
    bool all_grow = true;
    for (int m = tower.M; m + 3 <= tower.N; ++m) {
        wild = true; // at least one judged column exists
        for (int n = m + 3; n <= tower.N; ++n)
            if (tower.cell(m, n)->order <= tower.cell(m, n - 1)->order) all_grow = false;
    }
    if (wild && all_grow) {
        v.kind = StabilityVerdict::wild_evidence;
        v.detail = "every judged column grows strictly with n";
        return v;
    }
    v.kind = StabilityVerdict::inconclusive;
    v.detail = "columns neither constant nor strictly growing over the window";
    return v;
}

} // namespace arbor
