// Command-line front end: families, evaluation, portraits, quotient and tower
// reports, witness construction and replay.
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "arbor/errors.hpp"
#include "arbor/families.hpp"
#include "arbor/quotients.hpp"
#include "arbor/wildness.hpp"

namespace {

using namespace arbor;

struct Options {
    std::string family;
    std::string system_file;
    int d = 2, r = 2, s = 1, rexp = 1;
    std::string basepoint;
    std::string format = "table";
    Limits lim;
};

void add_system_flags(CLI::App* cmd, Options& opt) {
    cmd->add_option("--family", opt.family,
                    "built-in family: odometer, chebyshev, periodic, preperiodic, "
                    "dihedral, arith-periodic, arith-preperiodic");
    cmd->add_option("--system", opt.system_file, "recursion system file");
    cmd->add_option("--d", opt.d, "arity for odometer/chebyshev");
    cmd->add_option("--r", opt.r, "r parameter");
    cmd->add_option("--s", opt.s, "s parameter");
    cmd->add_option("--rexp", opt.rexp, "exponent parameter of arith-preperiodic");
}

Family resolve_family(const Options& opt) {
    if (!opt.system_file.empty() && !opt.family.empty())
        throw ParseError("give either --family or --system, not both");
    if (!opt.system_file.empty()) {
        std::ifstream in(opt.system_file);
        if (!in) throw ParseError("cannot read '" + opt.system_file + "'");
        std::ostringstream text;
        text << in.rdbuf();
        Family f;
        f.description = opt.system_file;
        f.system = RecursionSystem::parse(text.str());
        return f;
    }
    if (opt.family.empty()) throw ParseError("no system given (use --family or --system)");
    std::vector<int> params;
    if (opt.family == "odometer" || opt.family == "chebyshev")
        params = {opt.d};
    else if (opt.family == "periodic")
        params = {opt.r};
    else if (opt.family == "preperiodic")
        params = {opt.r, opt.s};
    else if (opt.family == "arith-preperiodic")
        params = {opt.rexp};
    return make_family(opt.family, params);
}

EventuallyPeriodicPath resolve_basepoint(const Options& opt, const RecursionSystem& sys) {
    if (opt.basepoint.empty()) return sys.basepoint();
    return parse_path(sys.index(), opt.basepoint);
}

bool kv(const Options& opt) { return opt.format == "kv"; }

std::string fp_text(const std::optional<Fingerprint>& fp) {
    return fp ? fp->render() : std::string("order beyond limit");
}

void print_tower(const Options& opt, const SphericalIndex& idx,
                 const DiscriminantTower& t) {
    std::cout << "# discriminant tower, cells " << t.M << " <= m < n <= " << t.N
              << ", basepoint " << render_path(idx, t.basepoint)
              << ", max-depth " << opt.lim.max_depth << " (finite-depth evidence only)\n";
    for (const auto& c : t.cells) {
        if (kv(opt)) {
            std::cout << "m=" << c.m << " n=" << c.n << " orbit=" << c.orbit.size()
                      << " order=" << c.order
                      << (c.fp ? " " + c.fp->render() : " fingerprint=beyond-limit")
                      << "\n";
        } else {
            std::cout << "D(" << c.m << "," << c.n << "): orbit " << std::setw(5)
                      << c.orbit.size() << "  order " << std::setw(10) << c.order << "  "
                      << fp_text(c.fp) << "\n";
        }
    }
    for (const auto& m : t.row_maps)
        std::cout << (kv(opt) ? "map=row " : "row map ") << "(" << m.src_m << "," << m.src_n
                  << ")->(" << m.dst_m << "," << m.dst_n << ")"
                  << (kv(opt) ? " surjective=" : " surjective ")
                  << (m.surjective ? "yes" : "no")
                  << (kv(opt) ? " injective=" : " injective ")
                  << (m.injective ? "yes" : "no") << (kv(opt) ? " kernel=" : " kernel ")
                  << m.kernel_size << "\n";
    for (const auto& m : t.column_maps)
        std::cout << (kv(opt) ? "map=column " : "column map ") << "(" << m.src_m << ","
                  << m.src_n << ")->(" << m.dst_m << "," << m.dst_n << ")"
                  << (kv(opt) ? " surjective=" : " surjective ")
                  << (m.surjective ? "yes" : "no")
                  << (kv(opt) ? " injective=" : " injective ")
                  << (m.injective ? "yes" : "no") << (kv(opt) ? " kernel=" : " kernel ")
                  << m.kernel_size << "\n";
}

} // namespace

int run(int argc, char** argv) {
    CLI::App app{"tree-automorphism group engine"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--max-depth", opt.lim.max_depth, "depth capacity");
    app.add_option("--max-order", opt.lim.max_order, "group order capacity");
    app.add_option("--format", opt.format, "output format: table | kv | dot");
    app.add_option("--basepoint", opt.basepoint, "basepoint path, e.g. 0* or (01)*");

    std::string elem_text = "e", vertex_text, index_text, perm_text, file_text;
    int depth = 4, level = 1, cell_m = 0, cell_n = 1, lo = 0, hi = 4, wit_n = 1, gen_i = 0;

    auto* c_apply = app.add_subcommand("apply", "image of a vertex");
    add_system_flags(c_apply, opt);
    c_apply->add_option("-e,--element", elem_text)->required();
    c_apply->add_option("-v,--vertex", vertex_text)->required();

    auto* c_section = app.add_subcommand("section", "section of an element at a vertex");
    add_system_flags(c_section, opt);
    c_section->add_option("-e,--element", elem_text)->required();
    c_section->add_option("-v,--vertex", vertex_text)->required();

    auto* c_portrait = app.add_subcommand("portrait", "portrait to a depth");
    add_system_flags(c_portrait, opt);
    c_portrait->add_option("-e,--element", elem_text)->required();
    c_portrait->add_option("--depth", depth);

    auto* c_quotient = app.add_subcommand("quotient", "level quotient order");
    add_system_flags(c_quotient, opt);
    c_quotient->add_option("--level", level)->required();

    auto* c_chain = app.add_subcommand("chain", "group chain report");
    add_system_flags(c_chain, opt);
    c_chain->add_option("--levels", hi)->required();

    auto* c_disc = app.add_subcommand("discriminant", "one tower cell");
    add_system_flags(c_disc, opt);
    c_disc->add_option("--m", cell_m)->required();
    c_disc->add_option("--n", cell_n)->required();

    auto* c_classify = app.add_subcommand("classify", "tower plus stability verdict");
    add_system_flags(c_classify, opt);
    c_classify->add_option("--min", lo)->required();
    c_classify->add_option("--max", hi)->required();

    auto* c_witness = app.add_subcommand("witness", "construct or replay certificates");
    auto* w_periodic = c_witness->add_subcommand("periodic", "periodic-family witness");
    w_periodic->add_option("--r", opt.r)->required();
    w_periodic->add_option("--n", wit_n)->required();
    w_periodic->add_option("--depth", depth);
    auto* w_nh = c_witness->add_subcommand("nonhausdorff", "preperiodic certificate");
    w_nh->add_option("--family", opt.family);
    w_nh->add_option("--r", opt.r)->required();
    w_nh->add_option("--s", opt.s)->required();
    w_nh->add_option("--gen", gen_i);
    w_nh->add_option("--depth", depth)->required();
    auto* w_check = c_witness->add_subcommand("check", "replay a serialized certificate");
    w_check->add_option("file", file_text)->required();
    c_witness->require_subcommand(1);

    auto* c_build = app.add_subcommand("build-nh", "portrait non-Hausdorff element");
    c_build->add_option("--index", index_text)->required();
    c_build->add_option("--perm", perm_text)->required();
    c_build->add_option("--depth", depth)->required();

    auto* c_family = app.add_subcommand("family", "emit a built-in family");
    c_family->add_option("name", opt.family)->required();
    c_family->add_option("--d", opt.d);
    c_family->add_option("--r", opt.r);
    c_family->add_option("--s", opt.s);
    c_family->add_option("--rexp", opt.rexp);
    bool emit = false;
    c_family->add_flag("--emit", emit);

    // allow global flags (--format, --max-depth, ...) after the subcommand too
    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
        sub->fallthrough();
        for (CLI::App* nested : sub->get_subcommands([](const CLI::App*) { return true; }))
            nested->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    if (*c_apply || *c_section || *c_portrait) {
        Family fam = resolve_family(opt);
        Element e = Element::from_word(fam.system, fam.system->parse_word(elem_text));
        if (*c_apply) {
            VertexWord v = parse_vertex(fam.system->index(), vertex_text);
            std::cout << render_vertex(fam.system->index(), e.apply(v)) << "\n";
        } else if (*c_section) {
            VertexWord v = parse_vertex(fam.system->index(), vertex_text);
            std::cout << fam.system->render_word(e.section(v).word()) << "\n";
        } else {
            Portrait p = e.portrait_of(depth, opt.lim);
            std::cout << (opt.format == "dot" ? p.render_dot() : p.render_text());
        }
        return 0;
    }
    if (*c_quotient) {
        Family fam = resolve_family(opt);
        FiniteQuotient q =
            level_quotient(fam.system, fam.group_generators(), level, opt.lim);
        if (kv(opt))
            std::cout << "level=" << q.level << " points=" << q.points
                      << " order=" << q.order(opt.lim)
                      << " transitive=" << (q.transitive() ? "yes" : "no") << "\n";
        else
            std::cout << "level " << q.level << ": " << q.points << " points, order "
                      << q.order(opt.lim) << ", "
                      << (q.transitive() ? "transitive" : "NOT transitive") << "\n";
        return 0;
    }
    if (*c_chain) {
        Family fam = resolve_family(opt);
        auto base = resolve_basepoint(opt, *fam.system);
        auto rows =
            chain_report(fam.system, fam.group_generators(), base, hi, opt.lim);
        std::cout << "# chain report, levels 1.." << hi << ", basepoint "
                  << render_path(fam.system->index(), base) << "\n";
        for (const auto& row : rows) {
            if (kv(opt))
                std::cout << "n=" << row.n << " transitive="
                          << (row.transitive ? "yes" : "no") << " index_gn=" << row.g_over_gn
                          << " order=" << row.g_over_cn << " disc=" << row.gn_over_cn
                          << "\n";
            else
                std::cout << "n " << std::setw(2) << row.n
                          << (row.transitive ? "  " : "  NOT transitive  ") << "|G/G_n| "
                          << std::setw(8) << row.g_over_gn << "  |G/C_n| " << std::setw(10)
                          << row.g_over_cn << "  |G_n/C_n| " << std::setw(8)
                          << row.gn_over_cn << "\n";
        }
        return 0;
    }
    if (*c_disc) {
        Family fam = resolve_family(opt);
        auto base = resolve_basepoint(opt, *fam.system);
        DiscriminantLevel cell = discriminant_level(
            fam.system, fam.group_generators(), base, cell_m, cell_n, opt.lim);
        if (kv(opt))
            std::cout << "m=" << cell.m << " n=" << cell.n << " orbit=" << cell.orbit.size()
                      << " order=" << cell.order
                      << (cell.fp ? " " + cell.fp->render() : " fingerprint=beyond-limit")
                      << "\n";
        else
            std::cout << "D(" << cell.m << "," << cell.n << "): orbit "
                      << cell.orbit.size() << ", order " << cell.order << ", "
                      << fp_text(cell.fp) << "\n";
        return 0;
    }
    if (*c_classify) {
        Family fam = resolve_family(opt);
        auto base = resolve_basepoint(opt, *fam.system);
        DiscriminantTower t = discriminant_tower(fam.system, fam.group_generators(),
                                                 base, lo, hi, opt.lim);
        print_tower(opt, fam.system->index(), t);
        StabilityVerdict v = stability_probe(t);
        switch (v.kind) {
            case StabilityVerdict::stable_evidence:
                std::cout << "verdict=stable-evidence order=" << v.stable_fp->order << "\n";
                break;
            case StabilityVerdict::wild_evidence:
                std::cout << "verdict=wild-evidence\n";
                break;
            default:
                std::cout << "verdict=inconclusive\n";
        }
        std::cout << "# " << v.detail << " (window " << lo << ".." << hi << ")\n";
        return 0;
    }
    if (*w_periodic) {
        LqaWitness w = periodic_witness(opt.r, wit_n, opt.lim);
        if (w_periodic->count("--depth")) w.check_depth = depth;
        std::cout << serialize_witness(w);
        std::cout << "# replay = " << (check_lqa_witness(w, opt.lim) ? "pass" : "fail")
                  << "\n";
        return 0;
    }
    if (*w_nh) {
        if (!opt.family.empty() && opt.family != "preperiodic")
            throw ParseError("nonhausdorff witnesses exist for the preperiodic family");
        Family fam = preperiodic_family(opt.r, opt.s);
        int gen = gen_i == 0 ? opt.r : gen_i;
        NonHausdorffCertificate c =
            nonhausdorff_certificate(fam, opt.r, opt.s, gen, depth, opt.lim);
        std::cout << serialize_certificate(c);
        std::cout << "# replay = " << (check_nonhausdorff(c, opt.lim) ? "pass" : "fail")
                  << "\n";
        return 0;
    }
    if (*w_check) {
        std::ifstream in(file_text);
        if (!in) throw ParseError("cannot read '" + file_text + "'");
        std::ostringstream text;
        text << in.rdbuf();
        ParsedCertificate parsed = parse_certificate(text.str());
        bool ok = parsed.kind == ParsedCertificate::lqa
                      ? check_lqa_witness(*parsed.witness, opt.lim)
                      : check_nonhausdorff(*parsed.certificate, opt.lim);
        std::cout << "check = " << (ok ? "pass" : "fail") << "\n";
        return 0;
    }
    if (*c_build) {
        SphericalIndex idx = parse_index_spec(index_text);
        BuiltNonHausdorff built = build_portrait_nonhausdorff(idx, perm_text, depth, opt.lim);
        std::cout << serialize_certificate(built.certificate);
        std::cout << "# replay = pass\n";
        return 0;
    }
    if (*c_family) {
        Family fam = resolve_family(opt);
        (void)emit; // --emit accepted for symmetry; emission is the only action
        std::cout << fam.system->emit();
        return 0;
    }
    return 1;
}

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const arbor::CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 2;
    } catch (const arbor::InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const arbor::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
