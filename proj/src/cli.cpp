#include "fieldstar/cli.hpp"

#include "fieldstar/complex.hpp"
#include "fieldstar/error.hpp"
#include "fieldstar/io.hpp"
#include "fieldstar/models.hpp"
#include "fieldstar/peierls.hpp"
#include "fieldstar/suites.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iomanip>
#include <optional>
#include <set>
#include <ostream>
#include <sstream>

namespace fieldstar::cli {

namespace {

struct Options {
    std::string config;
    std::optional<int> dim;
    int order = -1;
    std::string kernel;
    std::optional<std::uint64_t> seed;
    bool json = false;

    std::string left, right;
    std::string sort;
    std::string field, hamiltonian, prefactor;
    bool split = false;

    std::string suite;
    int trials = 50;
    std::string pairing = "real";
    std::string level = "all";

    double mass = 1.0, time = 0.0;
    int modes = 8;
    int verify_modes = 64;
    std::optional<double> x;
    std::string convention = "corrected";
};

struct Context {
    Session session;
    io::Config config;
};

Context load(const Options& o) {
    Context c;
    if (!o.config.empty()) {
        std::ifstream in(o.config);
        if (!in) throw Error("cannot read config '" + o.config + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        c.config = io::config_from_json(ss.str());
        c.session = c.config.session;
    } else {
        c.session = Session::standard(3);
    }
    if (o.dim) {
        if (*o.dim < 1 || *o.dim > kMaxDim) throw DimensionMismatch("--dim must be in 1.." + std::to_string(kMaxDim));
        c.session.dim = *o.dim;
    }
    if (o.order >= 0) c.session.order = o.order;
    if (o.seed) c.session.seed = *o.seed;
    return c;
}

bool is_functional_text(const std::string& t) {
    auto p = t.find_first_not_of(" \t");
    return p != std::string::npos && t.compare(p, 4, "int{") == 0;
}

/// The single pairing all sorts of the operands belong to; the first declared pairing when none appear.
Pairing pairing_for(const Session& s, const std::vector<Expr>& operands) {
    std::optional<Pairing> found;
    for (const Expr& e : operands)
        for (SortId so : sorts_of(e)) {
            Pairing p = s.pairing_of(so);
            if (found && (found->first != p.first || found->second != p.second))
                throw Error("operands mix several fields; operations use one pairing at a time");
            found = p;
        }
    if (found) return *found;
    if (s.sorts.empty()) throw Error("no field declared");
    return s.pairing_of(0);
}

Kernel kernel_or(const Session& s, const std::string& text, const std::string& fallback) {
    return io::parse_kernel(s, text.empty() ? fallback : text);
}

void print_expr(std::ostream& out, const Session& s, const Expr& e, bool json, std::string_view kind = "expr") {
    out << (json ? io::to_json(s, e, kind) : io::render(s, e)) << "\n";
}

void print_series(std::ostream& out, const Session& s, const HbarSeries& h, bool json) {
    out << (json ? io::to_json(s, h) : io::render(s, h)) << "\n";
}

void print_functional(std::ostream& out, const Session& s, const Functional& f, bool json) {
    out << (json ? io::to_json(s, f) : io::render(s, f)) << "\n";
}

/// Kernel parts to use: the kernel itself, or its classified parts with --split.
std::vector<Kernel> kernel_parts(const Kernel& p, bool split_mixed) {
    if (classify(p) != KernelClass::Mixed) return {p};
    if (!split_mixed) throw MixedKernel("mixed kernel; use --split to sum the symmetric and antisymmetric brackets");
    auto [even, odd] = split(p);
    return {even, odd};
}

int cmd_bracket(const Options& o, std::ostream& out) {
    Context c = load(o);
    const Session& s = c.session;
    Kernel p = kernel_or(s, o.kernel, "delta");
    bool lf = is_functional_text(o.left), rf = is_functional_text(o.right);
    if (!lf && rf) throw Error("put the functional operand first");
    if (lf && rf) {
        Functional F = io::parse_functional(s, o.left), G = io::parse_functional(s, o.right);
        Pairing pr = pairing_for(s, {F.density, G.density});
        Functional r{Expr(s.dim), F.label};
        for (const Kernel& part : kernel_parts(p, o.split)) {
            Functional b = bracket_functionals(F, G, part, pr);
            r.label = b.label;
            r.density += b.density;
        }
        print_functional(out, s, r, o.json);
        return kOk;
    }
    if (lf) {
        Functional F = io::parse_functional(s, o.left);
        Expr g = io::parse_expr(s, o.right);
        Pairing pr = pairing_for(s, {F.density, g});
        Label y = F.label == kY ? kZ : kY;
        Expr r(s.dim);
        for (const Kernel& part : kernel_parts(p, o.split)) r += bracket_functional_density(F, g, y, part, pr);
        print_expr(out, s, detach(r, y), o.json, "density");
        return kOk;
    }
    Expr f = io::parse_expr(s, o.left), g = io::parse_expr(s, o.right);
    Pairing pr = pairing_for(s, {f, g});
    Expr r(s.dim);
    if (!labels_of(f).empty()) throw LabelError("the left operand must be a free expression");
    std::set<Label> used = labels_of(g);
    if (!used.empty()) {
        Label c = 1;
        while (used.count(c)) ++c;
        if (c >= s.labels.size()) throw LabelError("no free point label left for the left operand");
        for (const Kernel& part : kernel_parts(p, o.split)) r += bracket_tensor(f, c, g, part, pr);
        print_expr(out, s, r, o.json);
        return kOk;
    }
    for (const Kernel& part : kernel_parts(p, o.split)) r += bracket_fn(f, kX, g, kY, part, pr);
    print_expr(out, s, r, o.json);
    return kOk;
}

int cmd_star(const Options& o, std::ostream& out) {
    Context c = load(o);
    const Session& s = c.session;
    Kernel p = kernel_or(s, o.kernel, "delta");
    const int K = s.order;
    bool lf = is_functional_text(o.left), rf = is_functional_text(o.right);
    if (!lf && rf) throw Error("put the functional operand first");
    if (lf && rf) {
        Functional F = io::parse_functional(s, o.left), G = io::parse_functional(s, o.right);
        print_series(out, s, star_functionals(F, G, p, pairing_for(s, {F.density, G.density}), K), o.json);
        return kOk;
    }
    if (lf) {
        Functional F = io::parse_functional(s, o.left);
        Expr g = io::parse_expr(s, o.right);
        Label y = F.label == kY ? kZ : kY;
        print_series(out, s, star_functional_density(F, g, y, p, pairing_for(s, {F.density, g}), K), o.json);
        return kOk;
    }
    Expr f = io::parse_expr(s, o.left), g = io::parse_expr(s, o.right);
    print_series(out, s, star_fn(f, kX, g, kY, p, pairing_for(s, {f, g}), K), o.json);
    return kOk;
}

int cmd_eom(const Options& o, std::ostream& out, std::ostream& err) {
    Context c = load(o);
    const Session& s = c.session;
    std::string htext = o.hamiltonian.empty() ? c.config.hamiltonian : o.hamiltonian;
    if (htext.empty()) throw Error("no Hamiltonian: pass --hamiltonian or a config with one");
    std::string ktext = o.kernel.empty() ? c.config.kernel : o.kernel;
    std::string ptext = o.prefactor.empty() ? c.config.prefactor : o.prefactor;
    Functional H = io::parse_functional(s, htext);
    Expr field = io::parse_expr(s, o.field);
    Kernel p = io::parse_kernel(s, ktext.empty() ? "delta" : ktext);
    Expr pre = io::parse_expr(s, ptext.empty() ? "1" : ptext);
    if (!pre.is_constant()) throw Error("prefactor must be a constant");
    Pairing pr = pairing_for(s, {H.density, field});
    EomResult r = equation_of_motion(H, field, p, pr, pre.constant_value(), std::max(1, s.order));
    if (!r.star_route_agrees) {
        err << "star-product route disagrees with the bracket route; first commutator term: "
            << suites::first_term(s, r.commutator) << "\n";
        return kResidual;
    }
    print_expr(out, s, r.rhs, o.json, "density");
    return kOk;
}

int cmd_vardiff(const Options& o, std::ostream& out, std::ostream& err) {
    Context c = load(o);
    const Session& s = c.session;
    Expr f = is_functional_text(o.left) ? io::parse_functional(s, o.left).density : io::parse_expr(s, o.left);
    SortId sort = 0;
    if (!o.sort.empty()) {
        auto so = s.find_sort(o.sort);
        if (!so) throw ParseError("unknown sort '" + o.sort + "'", 0);
        sort = *so;
    }
    if (!eval_at_origin(f).condition_b()) err << "warning: density violates condition B\n";
    print_expr(out, s, variational_derivative(f, sort), o.json, "density");
    return kOk;
}

int cmd_classify(const Options& o, std::ostream& out) {
    Context c = load(o);
    std::string text = !o.left.empty() ? o.left : o.kernel;
    if (text.empty()) throw Error("no kernel given");
    out << to_string(classify(io::parse_kernel(c.session, text))) << "\n";
    return kOk;
}

int cmd_normalize(const Options& o, std::ostream& out) {
    Context c = load(o);
    const Session& s = c.session;
    if (is_functional_text(o.left))
        print_functional(out, s, io::parse_functional(s, o.left), o.json);
    else
        print_expr(out, s, io::parse_expr(s, o.left), o.json);
    return kOk;
}

std::vector<Level> levels_for(const std::string& name) {
    const std::vector<Level> all{Level::Function, Level::Density, Level::FunctionalDensity,
                                 Level::FunctionalFunctionalDensity, Level::Functionals};
    if (name == "all") return all;
    for (Level l : all)
        if (name == to_string(l)) return {l};
    throw Error("unknown level '" + name + "'");
}

int cmd_verify(const Options& o, std::ostream& out) {
    Context c = load(o);
    const Session& s = c.session;
    suites::SuiteOptions so;
    so.trials = o.trials;
    so.seed = s.seed;
    so.order = o.order >= 0 ? o.order : 4;
    so.poly.dim = s.dim;
    if (o.pairing == "real") {
        so.poly.pairing = models::kRealPairing;
    } else if (o.pairing == "complex") {
        so.poly.pairing = models::kComplexPairing;
        so.poly.complex_coeffs = true;
    } else {
        throw Error("--pairing must be real or complex");
    }
    if (o.trials < 1) throw Error("--trials must be positive");

    std::vector<Kernel> kernels;
    if (!o.kernel.empty()) {
        Kernel p = io::parse_kernel(s, o.kernel);
        if (classify(p) == KernelClass::Mixed) throw MixedKernel("verification suites need a classified kernel");
        kernels.push_back(p);
    } else {
        kernels = {Kernel::delta(s.dim), Kernel::derivative(MultiIndex::unit(s.dim, 1))};
    }

    std::vector<suites::SuiteResult> results;
    const std::string& name = o.suite;
    if (name == "jacobi") {
        for (const Kernel& p : kernels) results.push_back(suites::jacobi(s, p, so));
    } else if (name == "assoc") {
        for (const Kernel& p : kernels)
            for (Level l : levels_for(o.level)) results.push_back(suites::associativity(s, p, l, so));
        for (const Kernel& p : kernels) results.push_back(suites::exp_order(s, p, so));
    } else if (name == "duality") {
        so.poly.max_jet_order = 2;
        results.push_back(suites::duality(s, so));
    } else if (name == "semiclassical") {
        for (const Kernel& p : kernels) results.push_back(suites::semiclassical(s, p, so));
    } else if (name == "closed-forms") {
        for (const Kernel& p : kernels)
            for (const char* w : {"bracket-density", "bracket-functionals", "gamma", "xi"})
                results.push_back(suites::closed_form(s, p, w, so));
    } else if (name == "complex-equiv") {
        Kernel p = o.kernel.empty() ? Kernel::delta(s.dim) : kernels.front();
        if (classify(p) != KernelClass::Symmetric) throw Error("the real/complex equivalence needs a symmetric kernel");
        results.push_back(suites::complex_equivalence(s, p, so));
    } else if (name == "peierls") {
        suites::PeierlsOptions po;
        po.modes = o.verify_modes;
        results.push_back(suites::peierls(s, po));
    } else {
        throw Error("unknown suite '" + name + "'");
    }
    bool ok = true;
    for (const auto& r : results) {
        out << (r.ok() ? "ok   " : "FAIL ") << r.summary() << "\n";
        ok = ok && r.ok();
    }
    return ok ? kOk : kResidual;
}

peierls::Convention convention_of(const std::string& name) {
    if (name == "corrected") return peierls::Convention::Corrected;
    if (name == "swapped") return peierls::Convention::Swapped;
    throw Error("--convention must be corrected or swapped");
}

int cmd_peierls_eval(const Options& o, std::ostream& out) {
    auto conv = convention_of(o.convention);
    if (o.modes < 1) throw Error("--modes must be at least 1");
    peierls::SpectralField g = peierls::green_eval(o.mass, o.time, o.modes, conv);
    out << std::setprecision(17);
    if (o.x) {
        out << "Delta(" << o.time << ", " << *o.x << ") = " << g.evaluate(*o.x) << "\n";
        return kOk;
    }
    for (int k = 0; k <= o.modes; ++k) out << "k=" << k << " " << g[k].real() << "\n";
    out << "pde-residual " << peierls::green_pde_residual(o.mass, o.time, o.modes, conv) << "\n";
    return kOk;
}

int cmd_peierls_bracket(const Options& o, std::ostream& out, std::ostream& err) {
    Context c = load(o);
    auto conv = convention_of(o.convention);
    const Pairing pr = c.session.pairing_of(0);
    peierls::ModeExpr b = peierls::peierls_bracket(pr, c.session.dim, conv);
    peierls::ModeExpr expected = peierls::green_symbol(peierls::Time::TMinusS, 0, conv) * Coeff(-1);
    peierls::PeierlsStar st = peierls::peierls_star(pr, c.session.dim, std::max(1, c.session.order), conv);
    bool ok = b == expected && st.exact && st.factorizes && st.matches_bracket;
    if (ok) {
        out << "{phi(t,x), phi(s,y)} = -Delta(t-s, x-y)\n";
        out << "phi(t,x) * phi(s,y) = phi(t,x)*phi(s,y) + hbar*(-Delta(t-s, x-y))\n";
        return kOk;
    }
    err << "bracket mode symbol: " << b.to_string() << "\n";
    err << "expected -Delta(t-s) symbol: " << expected.to_string() << "\n";
    return kResidual;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Exact Poisson brackets and star products of field-theory Hamiltonians"};
    app.name("fieldstar");
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--config", o.config, "Session config in canonical JSON");
    app.add_option("--dim", o.dim, "Spatial dimension (default 3)");
    app.add_option("--order", o.order, "Truncation order K");
    app.add_option("--kernel", o.kernel, "Kernel, e.g. \"delta\", \"d1 delta\", \"i*delta\"");
    app.add_option("--seed", o.seed, "Random seed for the verification suites");
    app.add_flag("--json", o.json, "Canonical JSON output");

    auto* bracket = app.add_subcommand("bracket", "Poisson bracket of two expressions or functionals");
    bracket->add_option("left", o.left)->required();
    bracket->add_option("right", o.right)->required();
    bracket->add_flag("--split", o.split, "Sum the brackets of the symmetric and antisymmetric kernel parts");

    auto* star = app.add_subcommand("star", "Star product as a series in hbar");
    star->add_option("left", o.left)->required();
    star->add_option("right", o.right)->required();

    auto* eom = app.add_subcommand("eom", "Equation of motion prefactor * {H, field}");
    eom->add_option("--field", o.field, "Field density, e.g. pi")->required();
    eom->add_option("--hamiltonian", o.hamiltonian, "Functional, e.g. \"int{x}: 1/2*pi^2\"");
    eom->add_option("--prefactor", o.prefactor, "Constant prefactor, e.g. i");

    auto* vardiff = app.add_subcommand("vardiff", "Variational derivative of a density");
    vardiff->add_option("density", o.left)->required();
    vardiff->add_option("--sort", o.sort, "Sort to vary (default: first declared)");

    auto* cls = app.add_subcommand("classify", "Symmetry class of a kernel");
    cls->add_option("kernel", o.left);

    auto* normalize = app.add_subcommand("normalize", "Canonical form of an expression or functional");
    normalize->add_option("expr", o.left)->required();

    auto* verify = app.add_subcommand("verify", "Run a randomized zero-residual suite");
    verify->add_option("suite", o.suite, "jacobi|assoc|duality|semiclassical|closed-forms|complex-equiv|peierls")
        ->required();
    verify->add_option("--trials", o.trials, "Random trials per check");
    verify->add_option("--pairing", o.pairing, "real or complex");
    verify->add_option("--level", o.level, "Associativity level or all");
    verify->add_option("--modes", o.verify_modes, "Mode cutoff for the peierls suite");

    auto* pe = app.add_subcommand("peierls", "Green function numerics and the symbolic Peierls bracket");
    pe->require_subcommand(1);
    auto* pe_eval = pe->add_subcommand("eval", "Green function modes or point value");
    pe_eval->add_option("--mass", o.mass);
    pe_eval->add_option("--time", o.time);
    pe_eval->add_option("--modes", o.modes);
    pe_eval->add_option("--x", o.x);
    pe_eval->add_option("--convention", o.convention, "corrected or swapped");
    auto* pe_bracket = pe->add_subcommand("bracket", "Derive {phi(t,x), phi(s,y)} from the Cauchy data");
    pe_bracket->add_option("--convention", o.convention, "corrected or swapped");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*bracket) return cmd_bracket(o, out);
        if (*star) return cmd_star(o, out);
        if (*eom) return cmd_eom(o, out, err);
        if (*vardiff) return cmd_vardiff(o, out, err);
        if (*cls) return cmd_classify(o, out);
        if (*normalize) return cmd_normalize(o, out);
        if (*verify) return cmd_verify(o, out);
        if (*pe_eval) return cmd_peierls_eval(o, out);
        if (*pe_bracket) return cmd_peierls_bracket(o, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

}  // namespace fieldstar::cli
