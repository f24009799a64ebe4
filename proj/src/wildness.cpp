#include "arbor/wildness.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "arbor/errors.hpp"

namespace arbor {

namespace {

VertexWord zeros(int k) { return VertexWord(static_cast<std::size_t>(k), 0); }

VertexWord cat(VertexWord a, const VertexWord& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

VertexWord repeat(const VertexWord& block, int times) {
    VertexWord out;
    for (int i = 0; i < times; ++i) out = cat(std::move(out), block);
    return out;
}

} // namespace

LqaWitness periodic_witness(int r, int n, const Limits& lim) {
    if (r < 2 || n < 1) throw ParseError("periodic witness needs r >= 2 and n >= 1");
    int nr = n * r;
    int check_depth = nr + 2 * r;
    if (check_depth > lim.max_depth)
        throw CapacityError("witness depth " + std::to_string(check_depth) +
                            " exceeds max depth " + std::to_string(lim.max_depth));
    Family fam = periodic_family(r);
    Word lambda = fam.named_word("lambda");
    long long shift = 1LL << (nr - 1);
    Word g = word_concat(
        word_pow(lambda, -shift),
        word_concat(word_pow(Word{1}, 1LL << n), word_pow(lambda, shift)));
    LqaWitness w{Element::from_word(fam.system, std::move(g)),
                 Cylinder{zeros(nr - 1)}, Cylinder{zeros(nr)}, check_depth};
    return w;
}

bool a1_power_pattern_check(int r, int n, int depth, const Limits& lim) {
    if (r < 2 || n < 1) throw ParseError("pattern check needs r >= 2 and n >= 1");
    int nr = n * r;
    if (depth < nr + r) throw ParseError("pattern check needs depth >= nr + r");
    if (depth > lim.max_depth) throw CapacityError("depth exceeds max depth");
    Family fam = periodic_family(r);
    const auto& sys = *fam.system;
    Word w = word_pow(Word{1}, 1LL << n);
    if (!sys.trivial_to_depth(w, nr)) return false;
    // below 0^{nr} the power collapses back to a1 itself
    Word at_spine = sys.section(w, zeros(nr));
    if (!sys.trivial_to_depth(word_concat(at_spine, word_inverse(Word{1})), depth - nr))
        return false;
    // and the sibling branch 0^{nr-1}1 carries nothing
    Word off_spine = sys.section(w, cat(zeros(nr - 1), {1}));
    return sys.trivial_to_depth(off_spine, depth - nr);
}

bool check_lqa_witness(const LqaWitness& w, const Limits& lim) {
    if (!w.O_trivial.contained_in(w.W) || w.O_trivial.base.size() <= w.W.base.size())
        throw ParseError("witness set O must lie strictly inside W");
    if (w.check_depth > lim.max_depth) throw CapacityError("witness depth exceeds max depth");
    return w.element.acts_trivially_on(w.O_trivial, w.check_depth, lim) &&
           w.element.acts_nontrivially_on(w.W, w.check_depth, lim);
}

NonHausdorffCertificate nonhausdorff_certificate(const Family& fam, int r, int s,
                                                 int b_gen, int depth, const Limits& lim) {
    if (r < 3 || s < 1 || s >= r) throw ParseError("need r >= 3 and 1 <= s < r");
    if (b_gen < s + 1 || b_gen > r)
        throw ParseError("only generators b_{s+1}..b_r admit this certificate");
    if (depth > lim.max_depth) throw CapacityError("depth exceeds max depth");

    NonHausdorffCertificate c{Element::from_word(fam.system, Word{b_gen}), {}, {}, depth};
    if (s + 1 == r) {
        if (b_gen != r)
            throw ParseError("in the fixed-point case only b_r carries the certificate");
        c.fixed_path = {{}, {1}};
        // the first moved vertex below W_n sits r levels down (through the
        // 0-branch shift chain), so the replay needs n + r <= depth
        for (int n = 1; n + r <= depth; ++n) {
            VertexWord w(static_cast<std::size_t>(n), 1);
            c.stages.push_back({Cylinder{w}, Cylinder{cat(cat(w, {0}), {1})}});
        }
    } else {
        VertexWord block = cat(zeros(r - s - 1), {1});
        VertexWord head = cat(zeros(b_gen - s - 1), {1});
        if (b_gen == r)
            c.fixed_path = {{}, block};
        else
            c.fixed_path = {head, block};
        for (int n = 1;; ++n) {
            VertexWord w = cat(head, repeat(block, n - 1));
            // same depth reserve as above: r levels below the stage base
            if (static_cast<int>(w.size()) + r > depth) break;
            c.stages.push_back({Cylinder{w}, Cylinder{cat(w, {1})}});
        }
    }
    if (c.stages.empty()) throw CapacityError("depth too small for any certificate stage");
    if (!check_nonhausdorff(c, lim))
        throw InternalError("non-Hausdorff certificate replay failed");
    return c;
}

bool check_nonhausdorff(const NonHausdorffCertificate& c, const Limits& lim) {
    if (c.depth > lim.max_depth) throw CapacityError("certificate depth exceeds max depth");
    if (c.stages.empty()) throw ParseError("certificate has no stages");
    for (std::size_t i = 0; i < c.stages.size(); ++i) {
        const auto& st = c.stages[i];
        if (!st.O.contained_in(st.W) || st.O.base.size() <= st.W.base.size())
            throw ParseError("certificate stage has O outside of or equal to W");
        if (st.W.base != c.fixed_path.truncate(static_cast<int>(st.W.base.size())))
            throw ParseError("certificate W base leaves the fixed path");
        if (i > 0 && (!st.W.contained_in(c.stages[i - 1].W) ||
                      st.W.base.size() <= c.stages[i - 1].W.base.size()))
            throw ParseError("certificate W sets fail to shrink");
    }
    if (!c.element.fixes_vertex(c.fixed_path.truncate(c.depth))) return false;
    for (const auto& st : c.stages) {
        if (!c.element.acts_trivially_on(st.O, c.depth, lim)) return false;
        if (!c.element.acts_nontrivially_on(st.W, c.depth, lim)) return false;
    }
    return true;
}

BuiltNonHausdorff build_portrait_nonhausdorff(const SphericalIndex& index,
                                   const std::vector<Perm>& node_perms, int depth,
                                   const Limits& lim) {
    if (depth % 2 == 0) throw ParseError("builder depth must be odd");
    if (depth < 5) throw ParseError("builder depth must be at least 5");
    if (depth > lim.max_depth) throw CapacityError("depth exceeds max depth");
    int K = (depth - 1) / 2;
    if (static_cast<int>(node_perms.size()) != K)
        throw ParseError("builder needs exactly " + std::to_string(K) +
                         " node permutations for depth " + std::to_string(depth));
    Portrait p;
    p.index = index;
    p.depth = depth;
    for (int k = 1; k <= K; ++k) {
        const Perm& perm = node_perms[static_cast<std::size_t>(k - 1)];
        if (perm.size() != static_cast<std::size_t>(index.entry(2 * k + 1)))
            throw ParseError("node permutation degree mismatch at level " +
                             std::to_string(2 * k));
        if (perm_is_identity(perm))
            throw ParseError("trivial node permutation rejected at level " +
                             std::to_string(2 * k));
        p.nodes.emplace(cat(zeros(2 * k - 1), {1}), perm);
    }
    BuiltNonHausdorff built{Element::from_portrait(std::move(p)),
                            {Element::from_portrait(Portrait{index, depth, {}}), {}, {}, depth}};
    built.certificate.element = built.element;
    built.certificate.fixed_path = {{}, {0}};
    for (int k = 1; k < K; ++k)
        built.certificate.stages.push_back(
            {Cylinder{zeros(2 * k)}, Cylinder{cat(zeros(2 * k), {1})}});
    if (!check_nonhausdorff(built.certificate, lim))
        throw InternalError("builder certificate replay failed");
    return built;
}

BuiltNonHausdorff build_portrait_nonhausdorff(const SphericalIndex& index,
                                   const std::string& perm_cycles, int depth,
                                   const Limits& lim) {
    if (depth % 2 == 0) throw ParseError("builder depth must be odd");
    int K = (depth - 1) / 2;
    std::vector<Perm> perms;
    for (int k = 1; k <= K; ++k)
        perms.push_back(perm_from_cycles(perm_cycles,
                                         static_cast<std::size_t>(index.entry(2 * k + 1))));
    return build_portrait_nonhausdorff(index, perms, depth, lim);
}

SelfSectionReport n0_n1_bounded_search(const std::shared_ptr<const RecursionSystem>& sys,
                                       int word_len_bound, int depth_bound, bool semantic,
                                       const Limits& lim) {
    if (word_len_bound < 0 || depth_bound < 1)
        throw ParseError("search bounds must be positive");
    if (depth_bound > lim.max_depth) throw CapacityError("depth bound exceeds max depth");

    // all freely reduced words up to the length bound, breadth first
    std::vector<Word> words{{}};
    std::size_t layer_start = 0;
    int num_gens = static_cast<int>(sys->num_generators());
    for (int len = 1; len <= word_len_bound; ++len) {
        std::size_t layer_end = words.size();
        for (std::size_t i = layer_start; i < layer_end; ++i) {
            for (int g = 1; g <= num_gens; ++g) {
                for (int sign : {1, -1}) {
                    std::int32_t letter = sign * g;
                    if (!words[i].empty() && words[i].back() == -letter) continue;
                    Word w = words[i];
                    w.push_back(letter);
                    words.push_back(std::move(w));
                    if (words.size() > lim.max_bfs)
                        throw CapacityError("word enumeration exceeds " +
                                            std::to_string(lim.max_bfs));
                }
            }
        }
        layer_start = layer_end;
    }

    std::vector<VertexWord> vertices;
    for (int lv = 1; lv <= depth_bound; ++lv) {
        std::uint64_t width = sys->index().level_width(lv, lim);
        for (std::uint64_t i = 0; i < width; ++i)
            vertices.push_back(ordinal_to_vertex(sys->index(), lv, i));
    }

    SelfSectionReport report;
    report.semantic = semantic;
    for (const Word& w : words) {
        bool found0 = false, found1 = false;
        for (const VertexWord& v : vertices) {
            Word s = sys->section(w, v);
            bool match = semantic ? sys->trivial_to_depth(word_concat(s, word_inverse(w)),
                                                          depth_bound)
                                  : (s == w);
            if (!match) continue;
            if (!found0) {
                report.n0.push_back({w, v});
                found0 = true;
            }
            if (!found1 && sys->fixes_vertex(w, v)) {
                report.n1.push_back({w, v});
                found1 = true;
            }
            if (found0 && found1) break;
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// serialization

namespace {

std::string render_cylinder(const SphericalIndex& idx, const Cylinder& c) {
    return c.base.empty() ? std::string("-") : render_vertex(idx, c.base);
}

void emit_element(std::ostringstream& out, const Element& e) {
    if (e.is_word()) {
        out << "element = " << e.system()->render_word(e.word()) << "\n";
        out << "system:\n" << e.system()->emit() << "end\n";
    } else {
        const Portrait& p = e.portrait();
        out << "index = " << render_index_spec(p.index) << "\n";
        out << "portrait_depth = " << p.depth << "\n";
        for (const auto& [v, perm] : p.nodes)
            out << "node = " << (v.empty() ? "-" : render_vertex(p.index, v)) << " : "
                << perm_to_cycles(perm) << "\n";
    }
}

std::string strip_ws(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

std::string serialize_witness(const LqaWitness& w) {
    std::ostringstream out;
    const SphericalIndex& idx = w.element.index();
    out << "kind = lqa\n";
    out << "check_depth = " << w.check_depth << "\n";
    out << "W = " << render_cylinder(idx, w.W) << "\n";
    out << "O = " << render_cylinder(idx, w.O_trivial) << "\n";
    emit_element(out, w.element);
    return out.str();
}

std::string serialize_certificate(const NonHausdorffCertificate& c) {
    std::ostringstream out;
    const SphericalIndex& idx = c.element.index();
    out << "kind = nonhausdorff\n";
    out << "depth = " << c.depth << "\n";
    out << "fixed_path = " << render_path(idx, c.fixed_path) << "\n";
    for (const auto& st : c.stages)
        out << "stage = " << render_cylinder(idx, st.W) << " "
            << render_cylinder(idx, st.O) << "\n";
    emit_element(out, c.element);
    return out.str();
}

ParsedCertificate parse_certificate(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::map<std::string, std::string> fields;
    std::vector<std::pair<std::string, std::string>> stages;
    std::vector<std::pair<std::string, std::string>> nodes;
    std::string system_text;
    bool in_system = false;
    while (std::getline(in, line)) {
        if (in_system) {
            if (strip_ws(line) == "end")
                in_system = false;
            else
                system_text += line + "\n";
            continue;
        }
        std::string s = strip_ws(line);
        if (s.empty() || s[0] == '#') continue;
        if (s == "system:") {
            in_system = true;
            continue;
        }
        auto eq = s.find('=');
        if (eq == std::string::npos) throw ParseError("certificate line needs '=': " + s);
        std::string key = strip_ws(s.substr(0, eq));
        std::string value = strip_ws(s.substr(eq + 1));
        if (key == "stage") {
            auto sp = value.find(' ');
            if (sp == std::string::npos) throw ParseError("stage needs two cylinders");
            stages.emplace_back(strip_ws(value.substr(0, sp)), strip_ws(value.substr(sp + 1)));
        } else if (key == "node") {
            auto colon = value.find(':');
            if (colon == std::string::npos) throw ParseError("node needs 'vertex : cycles'");
            nodes.emplace_back(strip_ws(value.substr(0, colon)),
                               strip_ws(value.substr(colon + 1)));
        } else {
            fields[key] = value;
        }
    }
    auto need = [&](const std::string& k) -> const std::string& {
        auto it = fields.find(k);
        if (it == fields.end()) throw ParseError("certificate misses field '" + k + "'");
        return it->second;
    };

    // reconstruct the element
    std::optional<Element> element;
    std::optional<SphericalIndex> idx;
    if (!system_text.empty()) {
        auto sys = RecursionSystem::parse(system_text);
        idx = sys->index();
        element = Element::from_word(sys, sys->parse_word(need("element")));
    } else {
        idx = parse_index_spec(need("index"));
        Portrait p;
        p.index = *idx;
        p.depth = std::stoi(need("portrait_depth"));
        for (const auto& [v, cycles] : nodes) {
            VertexWord vert = parse_vertex(*idx, v == "-" ? "" : v);
            p.nodes.emplace(vert, perm_from_cycles(cycles, static_cast<std::size_t>(
                                                               idx->entry(static_cast<int>(
                                                                              vert.size()) +
                                                                          1))));
        }
        element = Element::from_portrait(std::move(p));
    }

    auto parse_cyl = [&](const std::string& s) {
        return Cylinder{parse_vertex(*idx, s == "-" ? "" : s)};
    };

    ParsedCertificate out;
    const std::string& kind = need("kind");
    if (kind == "lqa") {
        out.kind = ParsedCertificate::lqa;
        out.witness = LqaWitness{*element, parse_cyl(need("W")), parse_cyl(need("O")),
                                 std::stoi(need("check_depth"))};
    } else if (kind == "nonhausdorff") {
        out.kind = ParsedCertificate::nonhausdorff;
        NonHausdorffCertificate c{*element, parse_path(*idx, need("fixed_path")), {},
                                  std::stoi(need("depth"))};
        for (const auto& [w, o] : stages) c.stages.push_back({parse_cyl(w), parse_cyl(o)});
        out.certificate = std::move(c);
    } else {
        throw ParseError("unknown certificate kind '" + kind + "'");
    }
    return out;
}

} // namespace arbor
