#include "arbor/recursion.hpp"

#include <algorithm>
#include <sstream>

#include "arbor/errors.hpp"

namespace arbor {

// ---------------------------------------------------------------------------
// words

Word word_reduce(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (std::int32_t g : w) {
        if (g == 0) throw InternalError("zero letter in word");
        if (!out.empty() && out.back() == -g)
            out.pop_back();
        else
            out.push_back(g);
    }
    return out;
}

Word word_concat(const Word& a, const Word& b) {
    Word out;
    out.reserve(a.size() + b.size());
    out = a;
    for (std::int32_t g : b) {
        if (!out.empty() && out.back() == -g)
            out.pop_back();
        else
            out.push_back(g);
    }
    return out;
}

Word word_inverse(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
    return out;
}

Word word_pow(const Word& w, long long k) {
    if (k < 0) return word_pow(word_inverse(w), -k);
    Word result;      // identity
    Word base = word_reduce(w);
    while (k > 0) {
        if (k & 1) result = word_concat(result, base);
        k >>= 1;
        if (k) base = word_concat(base, base);
    }
    return result;
}

// ---------------------------------------------------------------------------
// Builder

RecursionSystem::Builder::Builder(int arity) : d_(arity) {
    if (arity < 2) throw ParseError("arity must be >= 2");
}

int RecursionSystem::Builder::add_generator(const std::string& name) {
    if (name.empty() || name == "e")
        throw ParseError("invalid generator name '" + name + "'");
    if (names_.count(name)) throw ParseError("duplicate generator '" + name + "'");
    int id = static_cast<int>(gens_.size());
    names_[name] = id;
    gens_.push_back({name, perm_identity(static_cast<std::size_t>(d_)),
                     std::vector<Word>(static_cast<std::size_t>(d_))});
    return id;
}

void RecursionSystem::Builder::set_root(int gen, const Perm& root) {
    if (root.size() != static_cast<std::size_t>(d_))
        throw ParseError("root permutation degree mismatch");
    gens_.at(static_cast<std::size_t>(gen)).root = root;
}

void RecursionSystem::Builder::set_section(int gen, Letter x, const Word& w) {
    if (x < 0 || x >= d_) throw ParseError("section letter out of range");
    gens_.at(static_cast<std::size_t>(gen)).sections[static_cast<std::size_t>(x)] =
        word_reduce(w);
}

void RecursionSystem::Builder::set_preimage_tuple(int gen, const std::vector<Word>& tuple) {
    if (tuple.size() != static_cast<std::size_t>(d_))
        throw ParseError("tuple length must equal the arity");
    const Perm& root = gens_.at(static_cast<std::size_t>(gen)).root;
    // tuple[i] is the section at letter root^{-1}(i), i.e. g|_x = tuple[root(x)]
    for (Letter x = 0; x < d_; ++x)
        set_section(gen, x, tuple[root[static_cast<std::size_t>(x)]]);
}

void RecursionSystem::Builder::set_basepoint(const EventuallyPeriodicPath& p) {
    basepoint_ = p;
}

std::shared_ptr<const RecursionSystem> RecursionSystem::Builder::build() {
    auto sys = std::shared_ptr<RecursionSystem>(new RecursionSystem());
    sys->d_ = d_;
    sys->index_ = SphericalIndex::constant(d_);
    sys->gens_ = gens_;
    sys->names_ = names_;
    sys->basepoint_ = basepoint_.value_or(EventuallyPeriodicPath{{}, {0}});
    validate_path(sys->index_, sys->basepoint_);
    sys->root_inverses_.reserve(gens_.size());
    for (const auto& g : sys->gens_) {
        for (const Word& s : g.sections)
            for (std::int32_t l : s)
                if (l == 0 || std::abs(l) > static_cast<int>(gens_.size()))
                    throw ParseError("section of '" + g.name + "' references unknown generator");
        sys->root_inverses_.push_back(perm_inverse(g.root));
    }
    return sys;
}

// ---------------------------------------------------------------------------
// evaluation

int RecursionSystem::generator_id(const std::string& name) const {
    auto it = names_.find(name);
    if (it == names_.end()) throw ParseError("unknown generator '" + name + "'");
    return it->second;
}

Letter RecursionSystem::letter_image(std::int32_t signed_gen, Letter x) const {
    std::size_t g = static_cast<std::size_t>(std::abs(signed_gen)) - 1;
    const Perm& p = signed_gen > 0 ? gens_[g].root : root_inverses_[g];
    return static_cast<Letter>(p[static_cast<std::size_t>(x)]);
}

Word RecursionSystem::signed_section(std::int32_t signed_gen, Letter x) const {
    std::size_t g = static_cast<std::size_t>(std::abs(signed_gen)) - 1;
    if (signed_gen > 0) return gens_[g].sections[static_cast<std::size_t>(x)];
    // (g^-1)|_x = (g|_{root^-1(x)})^-1
    Letter y = static_cast<Letter>(root_inverses_[g][static_cast<std::size_t>(x)]);
    return word_inverse(gens_[g].sections[static_cast<std::size_t>(y)]);
}

Perm RecursionSystem::root_perm(const Word& w) const {
    Perm p(static_cast<std::size_t>(d_));
    for (Letter x = 0; x < d_; ++x) {
        Letter cur = x;
        for (auto it = w.rbegin(); it != w.rend(); ++it) cur = letter_image(*it, cur);
        p[static_cast<std::size_t>(x)] = static_cast<std::uint32_t>(cur);
    }
    return p;
}

VertexWord RecursionSystem::apply(const Word& w, const VertexWord& v) const {
    validate_vertex(index_, v);
    VertexWord out;
    out.reserve(v.size());
    Word cur = word_reduce(w);
    for (Letter x : v) {
        Letter img = x;
        for (auto it = cur.rbegin(); it != cur.rend(); ++it) img = letter_image(*it, img);
        out.push_back(img);
        cur = section(cur, x);
    }
    return out;
}

std::size_t RecursionSystem::WordHash::operator()(const Word& w) const {
    std::size_t h = 1469598103934665603ull;
    for (std::int32_t g : w) {
        h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(g));
        h *= 1099511628211ull;
    }
    return h;
}

std::uint32_t RecursionSystem::intern(const Word& w) const {
    auto [it, inserted] = intern_ids_.try_emplace(w, static_cast<std::uint32_t>(interned_.size()));
    if (inserted) interned_.push_back(w);
    return it->second;
}

Word RecursionSystem::section(const Word& w, Letter x) const {
    if (x < 0 || x >= d_) throw ParseError("section letter out of range");
    std::uint64_t key = (static_cast<std::uint64_t>(intern(w)) << 9) |
                        static_cast<std::uint64_t>(x);
    if (auto it = section_memo_.find(key); it != section_memo_.end()) return it->second;
    // (g_0 ... g_{L-1})|_x = g_0|_{(g_1..g_{L-1})(x)} . ... . g_{L-1}|_x
    std::vector<Word> pieces(w.size());
    Letter cur = x;
    for (std::size_t i = w.size(); i-- > 0;) {
        pieces[i] = signed_section(w[i], cur);
        cur = letter_image(w[i], cur);
    }
    Word out;
    for (const Word& s : pieces)
        for (std::int32_t g : s) {
            if (!out.empty() && out.back() == -g)
                out.pop_back();
            else
                out.push_back(g);
        }
    section_memo_.emplace(key, out);
    return out;
}

Word RecursionSystem::section(const Word& w, const VertexWord& v) const {
    Word cur = word_reduce(w);
    for (Letter x : v) cur = section(cur, x);
    return cur;
}

bool RecursionSystem::fixes_vertex(const Word& w, const VertexWord& v) const {
    return apply(w, v) == v;
}

void RecursionSystem::truncate_rec(const Word& w, int k, int n, std::uint64_t src,
                                   std::uint64_t dst, Perm& out) const {
    if (k == n) {
        out[src] = static_cast<std::uint32_t>(dst);
        return;
    }
    Perm rp = root_perm(w);
    std::uint64_t b = static_cast<std::uint64_t>(d_);
    for (Letter x = 0; x < d_; ++x)
        truncate_rec(section(w, x), k + 1, n, src * b + static_cast<std::uint64_t>(x),
                     dst * b + rp[static_cast<std::size_t>(x)], out);
}

Perm RecursionSystem::truncate(const Word& w, int n, const Limits& lim) const {
    std::uint64_t width = index_.level_width(n, lim);
    Perm out(static_cast<std::size_t>(width));
    truncate_rec(word_reduce(w), 0, n, 0, 0, out);
    return out;
}

bool RecursionSystem::trivial_to_depth(const Word& w, int n) const {
    if (n <= 0 || w.empty()) return true;
    std::uint64_t key = (static_cast<std::uint64_t>(intern(w)) << 9) |
                        (static_cast<std::uint64_t>(n) & 0xff) | 0x100;
    // key layout: bit 8 tags triviality entries so they never collide with
    // section keys; n is capped well below 256 by Limits in practice.
    if (auto it = trivial_memo_.find(key); it != trivial_memo_.end()) return it->second;
    bool ok = perm_is_identity(root_perm(w));
    for (Letter x = 0; ok && x < d_; ++x) ok = trivial_to_depth(section(w, x), n - 1);
    trivial_memo_.emplace(key, ok);
    return ok;
}

bool RecursionSystem::trivial_on(const Word& w, const VertexWord& base, int depth) const {
    if (depth < static_cast<int>(base.size()))
        throw ParseError("cylinder base deeper than the requested depth");
    if (!fixes_vertex(w, base)) return false;
    return trivial_to_depth(section(word_reduce(w), base), depth - static_cast<int>(base.size()));
}

bool RecursionSystem::nontrivial_on(const Word& w, const VertexWord& base, int depth) const {
    return !trivial_on(w, base, depth);
}

// ---------------------------------------------------------------------------
// words as text

Word RecursionSystem::parse_word(const std::string& text) const {
    Word w;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        if (tok == "e") continue;
        bool inverse = false;
        if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
            inverse = true;
            tok = tok.substr(0, tok.size() - 3);
        }
        int id = generator_id(tok) + 1;
        w.push_back(inverse ? -id : id);
    }
    return word_reduce(w);
}

std::string RecursionSystem::render_word(const Word& w) const {
    if (w.empty()) return "e";
    std::ostringstream out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out << ' ';
        out << gens_[static_cast<std::size_t>(std::abs(w[i])) - 1].name;
        if (w[i] < 0) out << "^-1";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// file format

namespace {

std::string strip(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

std::shared_ptr<const RecursionSystem> RecursionSystem::parse(const std::string& text) {
    std::vector<std::string> lines;
    {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            lines.push_back(strip(line));
        }
    }
    int arity = -1;
    std::string basepoint_text;
    struct GenLine {
        std::string name;
        std::string body; // after "gen NAME:"
        int lineno;
    };
    std::vector<GenLine> gen_lines;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        int lineno = static_cast<int>(i) + 1;
        if (line.empty()) continue;
        auto fail = [&](const std::string& msg) {
            throw ParseError("line " + std::to_string(lineno) + ": " + msg);
        };
        if (line.rfind("tree ", 0) == 0) {
            auto eq = line.find('=');
            if (eq == std::string::npos) fail("expected '=' in tree declaration");
            std::string kind = strip(line.substr(5, eq - 5));
            std::string value = strip(line.substr(eq + 1));
            SphericalIndex idx = kind == "arity" ? SphericalIndex::constant(std::stoi(value))
                                : kind == "index" ? parse_index_spec(value)
                                                  : throw ParseError("line " + std::to_string(lineno) +
                                                                     ": unknown tree declaration '" + kind + "'");
            if (!idx.is_constant())
                fail("recursion systems require a constant-arity tree");
            arity = idx.constant_arity();
        } else if (line.rfind("basepoint", 0) == 0) {
            auto eq = line.find('=');
            if (eq == std::string::npos) fail("expected '=' in basepoint declaration");
            basepoint_text = strip(line.substr(eq + 1));
        } else if (line.rfind("gen ", 0) == 0) {
            auto colon = line.find(':');
            if (colon == std::string::npos) fail("expected ':' after generator name");
            gen_lines.push_back({strip(line.substr(4, colon - 4)), line.substr(colon + 1), lineno});
        } else {
            fail("unrecognized line: " + line);
        }
    }
    if (arity < 2) throw ParseError("missing or invalid tree declaration");
    if (gen_lines.empty()) throw ParseError("no generators declared");

    Builder b(arity);
    for (const auto& g : gen_lines) b.add_generator(g.name);

    // Second pass: sections may reference any declared generator.
    auto names_only = [&](const std::string& n) {
        for (std::size_t i = 0; i < gen_lines.size(); ++i)
            if (gen_lines[i].name == n) return static_cast<int>(i);
        throw ParseError("undefined generator '" + n + "'");
    };
    for (std::size_t gi = 0; gi < gen_lines.size(); ++gi) {
        const auto& g = gen_lines[gi];
        auto fail = [&](const std::string& msg) {
            throw ParseError("line " + std::to_string(g.lineno) + ": " + msg);
        };
        std::vector<bool> seen(static_cast<std::size_t>(arity), false);
        std::istringstream chunks(g.body);
        std::string chunk;
        while (std::getline(chunks, chunk, ';')) {
            chunk = strip(chunk);
            if (chunk.empty()) continue;
            if (chunk.rfind("perm", 0) == 0) {
                auto eq = chunk.find('=');
                if (eq == std::string::npos) fail("expected '=' after perm");
                b.set_root(static_cast<int>(gi),
                           perm_from_cycles(strip(chunk.substr(eq + 1)),
                                            static_cast<std::size_t>(arity)));
            } else {
                auto arrow = chunk.find("->");
                if (arrow == std::string::npos) fail("expected 'letter -> word': " + chunk);
                int letter;
                try {
                    letter = std::stoi(strip(chunk.substr(0, arrow)));
                } catch (const std::exception&) {
                    fail("bad section letter in: " + chunk);
                    letter = 0;
                }
                if (letter < 0 || letter >= arity) fail("section letter out of range");
                if (seen[static_cast<std::size_t>(letter)]) fail("duplicate section letter");
                seen[static_cast<std::size_t>(letter)] = true;
                Word w;
                std::istringstream toks(chunk.substr(arrow + 2));
                std::string tok;
                while (toks >> tok) {
                    if (tok == "e") continue;
                    bool inverse = false;
                    if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
                        inverse = true;
                        tok = tok.substr(0, tok.size() - 3);
                    }
                    int id = names_only(tok) + 1;
                    w.push_back(inverse ? -id : id);
                }
                b.set_section(static_cast<int>(gi), letter, w);
            }
        }
        for (int x = 0; x < arity; ++x)
            if (!seen[static_cast<std::size_t>(x)])
                fail("missing section for letter " + std::to_string(x));
    }
    auto sys = b.build();
    if (!basepoint_text.empty()) {
        // rebuild with the basepoint (builder validates against the index)
        Builder b2(arity);
        for (const auto& g : gen_lines) b2.add_generator(g.name);
        for (std::size_t gi = 0; gi < sys->num_generators(); ++gi) {
            const auto& gen = sys->generator(static_cast<int>(gi));
            b2.set_root(static_cast<int>(gi), gen.root);
            for (Letter x = 0; x < arity; ++x)
                b2.set_section(static_cast<int>(gi), x, gen.sections[static_cast<std::size_t>(x)]);
        }
        b2.set_basepoint(parse_path(sys->index(), basepoint_text));
        sys = b2.build();
    }
    return sys;
}

std::string RecursionSystem::emit() const {
    std::ostringstream out;
    out << "tree arity = " << d_ << "\n";
    out << "basepoint = " << render_path(index_, basepoint_) << "\n";
    for (const auto& g : gens_) {
        out << "gen " << g.name << ": perm = " << perm_to_cycles(g.root);
        for (Letter x = 0; x < d_; ++x)
            out << "; " << x << " -> " << render_word(g.sections[static_cast<std::size_t>(x)]);
        out << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Portrait

const Perm* Portrait::node(const VertexWord& v) const {
    auto it = nodes.find(v);
    return it == nodes.end() ? nullptr : &it->second;
}

Perm Portrait::node_or_identity(const VertexWord& v) const {
    if (const Perm* p = node(v)) return *p;
    return perm_identity(static_cast<std::size_t>(index.entry(static_cast<int>(v.size()) + 1)));
}

VertexWord Portrait::apply(const VertexWord& v) const {
    if (static_cast<int>(v.size()) > depth)
        throw CapacityError("portrait depth cap " + std::to_string(depth) + " exceeded");
    VertexWord out;
    out.reserve(v.size());
    VertexWord prefix;
    for (Letter x : v) {
        if (const Perm* p = node(prefix))
            out.push_back(static_cast<Letter>((*p)[static_cast<std::size_t>(x)]));
        else
            out.push_back(x);
        prefix.push_back(x);
    }
    return out;
}

std::string Portrait::render_text() const {
    std::ostringstream out;
    // Deterministic order: std::map sorts by word (prefix before extension).
    out << "portrait depth " << depth << "\n";
    out << "<root>: " << perm_to_cycles(node_or_identity({})) << "\n";
    for (const auto& [v, p] : nodes) {
        if (v.empty()) continue;
        out << std::string(v.size() * 2, ' ') << render_vertex(index, v) << ": "
            << perm_to_cycles(p) << "\n";
    }
    return out.str();
}

std::string Portrait::render_dot() const {
    std::ostringstream out;
    out << "digraph portrait {\n  node [shape=box];\n";
    // Emit exactly the labelled skeleton: every stored node plus its ancestors.
    std::map<VertexWord, bool> shown;
    auto show = [&](const VertexWord& v) {
        if (shown.count(v)) return;
        shown[v] = true;
        std::string name = v.empty() ? std::string("root") : render_vertex(index, v);
        out << "  \"" << name << "\" [label=\"" << (v.empty() ? "" : name + " : ")
            << perm_to_cycles(node_or_identity(v)) << "\"];\n";
    };
    show({});
    for (const auto& [v, p] : nodes) {
        VertexWord prefix;
        for (Letter x : v) {
            prefix.push_back(x);
            show(prefix);
        }
    }
    for (const auto& [v, flag] : shown) {
        (void)flag;
        if (v.empty()) continue;
        VertexWord parent(v.begin(), v.end() - 1);
        std::string pn = parent.empty() ? std::string("root") : render_vertex(index, parent);
        out << "  \"" << pn << "\" -> \"" << render_vertex(index, v) << "\";\n";
    }
    out << "}\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Element

Element Element::from_word(std::shared_ptr<const RecursionSystem> sys, Word w) {
    Element e;
    e.sys_ = std::move(sys);
    e.word_ = word_reduce(w);
    return e;
}

Element Element::from_portrait(Portrait p) {
    Element e;
    // drop explicitly-identity nodes so the sparse invariant holds
    for (auto it = p.nodes.begin(); it != p.nodes.end();) {
        if (static_cast<int>(it->first.size()) >= p.depth)
            throw ParseError("portrait node below the depth cap");
        if (perm_is_identity(it->second))
            it = p.nodes.erase(it);
        else
            ++it;
    }
    e.portrait_ = std::move(p);
    return e;
}

const Word& Element::word() const {
    if (!is_word()) throw InternalError("element is not in word form");
    return word_;
}

const Portrait& Element::portrait() const {
    if (is_word()) throw InternalError("element is not in portrait form");
    return *portrait_;
}

const SphericalIndex& Element::index() const {
    return is_word() ? sys_->index() : portrait_->index;
}

std::optional<int> Element::cap() const {
    if (is_word()) return std::nullopt;
    return portrait_->depth;
}

void Element::require_depth(int n) const {
    if (!is_word() && n > portrait_->depth)
        throw CapacityError("operation needs depth " + std::to_string(n) +
                            " beyond portrait cap " + std::to_string(portrait_->depth));
}

VertexWord Element::apply(const VertexWord& v) const {
    if (is_word()) return sys_->apply(word_, v);
    return portrait_->apply(v);
}

Element Element::section(const VertexWord& v) const {
    if (is_word()) return from_word(sys_, sys_->section(word_, v));
    require_depth(static_cast<int>(v.size()));
    Portrait out;
    out.index = portrait_->index; // sections of a constant-index tree live on the same tree;
    out.depth = portrait_->depth - static_cast<int>(v.size());
    if (!portrait_->index.is_constant())
        throw CapacityError("sections of portraits are only defined on constant-arity trees");
    for (const auto& [u, p] : portrait_->nodes) {
        if (u.size() < v.size()) continue;
        if (!std::equal(v.begin(), v.end(), u.begin())) continue;
        out.nodes.emplace(VertexWord(u.begin() + static_cast<long>(v.size()), u.end()), p);
    }
    Element e = from_portrait(std::move(out));
    return e;
}

Element Element::compose(const Element& rhs) const {
    if (is_word() && rhs.is_word()) {
        if (sys_ != rhs.sys_ && sys_->emit() != rhs.sys_->emit())
            throw ParseError("cannot compose elements over different systems");
        return from_word(sys_, word_concat(word_, rhs.word_));
    }
    // At least one portrait: work nodewise at the common cap.
    int cap_l = is_word() ? -1 : portrait_->depth;
    int cap_r = rhs.is_word() ? -1 : rhs.portrait_->depth;
    int cap = cap_l < 0 ? cap_r : cap_r < 0 ? cap_l : std::min(cap_l, cap_r);
    bool warn = cap_l >= 0 && cap_r >= 0 && cap_l != cap_r;
    Portrait g = is_word() ? portrait_of(cap) : *portrait_;
    Portrait h = rhs.is_word() ? rhs.portrait_of(cap) : *rhs.portrait_;
    if (!(g.index == h.index)) throw ParseError("cannot compose elements over different trees");
    Portrait out;
    out.index = g.index;
    out.depth = cap;
    Element he = from_portrait(h);
    Element hinv = he.invert();
    auto emit_node = [&](const VertexWord& v) {
        if (static_cast<int>(v.size()) >= cap || out.nodes.count(v)) return;
        Perm p = perm_compose(g.node_or_identity(he.apply(v)), h.node_or_identity(v));
        if (!perm_is_identity(p)) out.nodes.emplace(v, std::move(p));
    };
    for (const auto& [v, p] : h.nodes) {
        (void)p;
        emit_node(v);
    }
    for (const auto& [u, p] : g.nodes) {
        (void)p;
        if (static_cast<int>(u.size()) >= cap) continue;
        emit_node(hinv.apply(u));
    }
    Element e = from_portrait(std::move(out));
    e.cap_warning_ = warn || cap_warning_ || rhs.cap_warning_;
    return e;
}

Element Element::invert() const {
    if (is_word()) return from_word(sys_, word_inverse(word_));
    Portrait out;
    out.index = portrait_->index;
    out.depth = portrait_->depth;
    for (const auto& [u, p] : portrait_->nodes)
        out.nodes.emplace(portrait_->apply(u), perm_inverse(p));
    Element e = from_portrait(std::move(out));
    e.cap_warning_ = cap_warning_;
    return e;
}

Perm Element::truncate(int n, const Limits& lim) const {
    if (is_word()) return sys_->truncate(word_, n, lim);
    require_depth(n);
    const SphericalIndex& idx = portrait_->index;
    std::uint64_t width = idx.level_width(n, lim);
    Perm out(static_cast<std::size_t>(width));
    for (std::uint64_t i = 0; i < width; ++i)
        out[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(
            vertex_to_ordinal(idx, portrait_->apply(ordinal_to_vertex(idx, n, i))));
    return out;
}

Portrait Element::portrait_of(int n, const Limits& lim) const {
    require_depth(n);
    if (n > lim.max_depth) throw CapacityError("portrait depth exceeds max depth");
    Portrait out;
    out.index = index();
    out.depth = n;
    if (is_word()) {
        // node at v = root permutation of the section at v
        struct Walker {
            const RecursionSystem& sys;
            Portrait& out;
            int n;
            void walk(const Word& w, VertexWord& v) {
                if (static_cast<int>(v.size()) >= n) return;
                Perm p = sys.root_perm(w);
                if (!perm_is_identity(p)) out.nodes.emplace(v, p);
                for (Letter x = 0; x < sys.arity(); ++x) {
                    v.push_back(x);
                    walk(sys.section(w, x), v);
                    v.pop_back();
                }
            }
        } walker{*sys_, out, n};
        VertexWord root;
        index().level_width(n, lim); // capacity guard before the full walk
        walker.walk(word_, root);
    } else {
        for (const auto& [v, p] : portrait_->nodes)
            if (static_cast<int>(v.size()) < n) out.nodes.emplace(v, p);
    }
    return out;
}

bool Element::is_trivial_to_depth(int n, const Limits& lim) const {
    (void)lim;
    if (is_word()) return sys_->trivial_to_depth(word_, n);
    require_depth(n);
    for (const auto& [v, p] : portrait_->nodes) {
        (void)p;
        if (static_cast<int>(v.size()) < n) return false; // stored nodes are non-identity
    }
    return true;
}

bool Element::acts_trivially_on(const Cylinder& c, int depth, const Limits& lim) const {
    (void)lim;
    if (depth < static_cast<int>(c.base.size()))
        throw ParseError("cylinder base deeper than the requested depth");
    if (is_word()) return sys_->trivial_on(word_, c.base, depth);
    require_depth(depth);
    if (portrait_->apply(c.base) != c.base) return false;
    for (const auto& [v, p] : portrait_->nodes) {
        (void)p;
        if (static_cast<int>(v.size()) >= depth) continue;
        if (v.size() < c.base.size()) continue;
        if (std::equal(c.base.begin(), c.base.end(), v.begin())) return false;
    }
    return true;
}

bool Element::acts_nontrivially_on(const Cylinder& c, int depth, const Limits& lim) const {
    return !acts_trivially_on(c, depth, lim);
}

bool Element::fixes_vertex(const VertexWord& v) const { return apply(v) == v; }

} // namespace arbor
