#include "subfde/cli.hpp"

#include "subfde/assembly.hpp"
#include "subfde/caputo.hpp"
#include "subfde/conditioning.hpp"
#include "subfde/config.hpp"
#include "subfde/errors.hpp"
#include "subfde/expr.hpp"
#include "subfde/oracles.hpp"
#include "subfde/solver.hpp"
#include "subfde/stencil.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

namespace subfde {

std::string format_number(double v) {
    if (v == 0.0) v = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace {

struct Options {
    std::string config;
    std::string out;
    std::string h;
    std::optional<double> t_end;
    std::optional<double> alpha;
    std::optional<double> beta;
    std::optional<double> nu;
    std::vector<int> n;
    std::string kind;
    std::string format = "text";
    double tol = 1e-15;
    int terms = kMaxSeriesTerms;
    int levels = 4;
    bool fail_on_unconditioned = false;
    bool dump = false;
    std::string dnf;
    std::string f;
    std::vector<double> at;
};

// Usage-level failure raised inside a subcommand.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double constant(const std::string& text, const char* what) {
    try {
        const Expression e = parse_expression(text);
        if (!e.is_constant()) throw UsageError(std::string(what) + " must be a constant");
        return e.eval(0.0);
    } catch (const ParseError& e) {
        throw UsageError(std::string(what) + ": " + e.what());
    }
}

class Csv {
public:
    explicit Csv(std::ostream& os) : os_(os) {}

    void header(std::initializer_list<const char*> cols) {
        bool first = true;
        for (const char* c : cols) {
            if (!first) os_ << ',';
            os_ << c;
            first = false;
        }
        os_ << '\n';
    }

    void row(std::initializer_list<double> vals) {
        bool first = true;
        for (double v : vals) {
            if (!first) os_ << ',';
            os_ << format_number(v);
            first = false;
        }
        os_ << '\n';
    }

private:
    std::ostream& os_;
};

struct Loaded {
    ProblemConfig cfg;
    FdeProblem problem;
    double h;
    double t_end;
    int M;
};

Loaded load(const Options& o) {
    if (o.config.empty()) throw UsageError("--config is required");
    ProblemConfig cfg = load_config(o.config);
    const double h = o.h.empty() ? cfg.h : constant(o.h, "--h");
    const double t_end = o.t_end.value_or(cfg.t_end);
    int M = 0;
    try {
        M = steps_for(h, t_end);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    FdeProblem problem = cfg.problem();
    return {std::move(cfg), std::move(problem), h, t_end, M};
}

void print_report(std::ostream& os, const ConditioningReport& r) {
    os << "rows checked: " << r.rows.size() << '\n';
    os << "delta: " << format_number(r.delta) << '\n';
    os << "alt_a: " << format_number(r.alt_a) << '\n';
    os << "alt_b: " << format_number(r.alt_b) << '\n';
    os << "satisfied: " << (r.satisfied ? "yes" : "no") << '\n';
}

int cmd_solve(const Options& o, std::ostream& os, std::ostream& err) {
    const Loaded in = load(o);
    SolveResult res;
    if (in.cfg.calibrate) {
        const auto& c = *in.cfg.calibrate;
        res = calibrate(in.problem, c.epsilon, c.t_ref, c.u_ref, in.h, in.M);
    } else {
        res = solve(in.problem, in.h, in.M);
    }
    Csv csv(os);
    csv.header({"t", "y"});
    for (int j = 0; j <= in.M; ++j) csv.row({res.grid[j], res.y[static_cast<std::size_t>(j)]});
    err << "conditioning " << (res.report.satisfied ? "satisfied" : "not satisfied")
        << ", delta = " << format_number(res.report.delta) << ", min pivot = " << format_number(res.pivot_min)
        << ", degraded rows = " << res.degraded_rows.size() << '\n';
    return kExitOk;
}

int cmd_condition(const Options& o, std::ostream& os) {
    const Loaded in = load(o);
    const auto rows = assemble_system(in.problem, in.h, in.M);
    const ConditioningReport report = check_conditioning(rows, in.problem.order());
    print_report(os, report);
    Csv csv(os);
    csv.header({"m", "diag", "offdiag", "margin"});
    for (const auto& r : report.rows) csv.row({static_cast<double>(r.m), r.diag, r.offdiag, r.margin});
    if (!report.satisfied && o.fail_on_unconditioned) return kExitNumerical;
    return kExitOk;
}

int cmd_assemble(const Options& o, std::ostream& os) {
    const Loaded in = load(o);
    const auto rows = assemble_system(in.problem, in.h, in.M);
    Csv csv(os);
    if (o.dump) {
        csv.header({"m", "k", "d"});
        for (const auto& r : rows)
            for (std::size_t k = 0; k < r.d.size(); ++k) csv.row({static_cast<double>(r.m), static_cast<double>(k), r.d[k]});
        return kExitOk;
    }
    csv.header({"m", "pivot", "p", "rhs", "degraded"});
    for (const auto& r : rows) csv.row({static_cast<double>(r.m), r.pivot(), r.p, r.rhs, r.degraded ? 1.0 : 0.0});
    return kExitOk;
}

int cmd_converge(const Options& o, std::ostream& os) {
    const Loaded in = load(o);
    if (o.levels < 2) throw UsageError("--levels must be at least 2");
    std::function<double(double)> oracle;
    if (in.cfg.exact) {
        const Expression exact = parse_expression(*in.cfg.exact);
        oracle = [exact](double t) { return exact.eval(t); };
    } else {
        const auto& terms = in.problem.terms();
        const bool relaxation = terms.size() == 1 && terms[0].coefficient.is_constant() &&
                                terms[0].coefficient.eval(0.0) == 1.0 && in.problem.p().is_constant() &&
                                in.problem.p().eval(0.0) == 1.0 && in.problem.f().is_constant() &&
                                in.problem.f().eval(0.0) == 1.0 &&
                                std::all_of(in.problem.initial_conditions().begin(),
                                            in.problem.initial_conditions().end(), [](double v) { return v == 0.0; });
        if (!relaxation) throw UsageError("config needs an 'exact' line (no built-in oracle for this problem)");
        const double a = terms[0].order.alpha();
        oracle = [a](double t) { return relaxation_solution(a, t); };
    }
    std::vector<double> hs;
    for (int i = 0; i < o.levels; ++i) hs.push_back(std::ldexp(in.h, -i));
    const auto table = convergence_study(in.problem, oracle, hs, in.t_end);
    Csv csv(os);
    csv.header({"h", "max_error", "observed_order"});
    for (const auto& pt : table) csv.row({pt.h, pt.max_error, pt.observed_order});
    return kExitOk;
}

int cmd_deriv(const Options& o, std::ostream& os) {
    if (!o.alpha) throw UsageError("--alpha is required");
    if (o.dnf.empty() == o.f.empty()) throw UsageError("give exactly one of --dnf or --f");
    const FracOrder order(*o.alpha);
    const double h = o.h.empty() ? std::ldexp(1.0, -10) : constant(o.h, "--h");
    const double t_end = o.t_end.value_or(1.0);
    int M = 0;
    try {
        M = steps_for(h, t_end);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    Csv csv(os);
    csv.header({"t", "caputo"});
    if (!o.dnf.empty()) {
        const Expression dnf = parse_expression(o.dnf);
        for (int m = 1; m <= M; ++m) {
            const double v = caputo_substitution([&](double x) { return dnf.eval(x); }, order, Grid::uniform(h, m));
            csv.row({m * h, v});
        }
        return kExitOk;
    }
    const Expression f = parse_expression(o.f);
    std::vector<double> samples(static_cast<std::size_t>(M) + 1);
    for (int j = 0; j <= M; ++j) samples[static_cast<std::size_t>(j)] = f.eval(j * h);
    for (int m = std::max(1, order.n()); m <= M; ++m)
        csv.row({m * h, caputo_substitution_sampled(std::span(samples).first(static_cast<std::size_t>(m) + 1),
                                                    order, h)});
    return kExitOk;
}

int cmd_stencil(const Options& o, std::ostream& os) {
    std::vector<int> orders = o.n;
    if (orders.empty())
        for (int n = 1; n <= 8; ++n) orders.push_back(n);
    std::vector<StencilKind> kinds;
    if (o.kind.empty() || o.kind == "all")
        kinds = {StencilKind::central, StencilKind::forward, StencilKind::backward};
    else if (o.kind == "central")
        kinds = {StencilKind::central};
    else if (o.kind == "forward")
        kinds = {StencilKind::forward};
    else if (o.kind == "backward")
        kinds = {StencilKind::backward};
    else
        throw UsageError("--kind must be central, forward, backward or all");
    const bool csv = o.format == "csv";
    if (!csv && o.format != "text") throw UsageError("--format must be text or csv");

    static const char* names[] = {"central", "forward", "backward", "fitted"};
    if (csv) os << "kind,n,offset,weight,norm\n";
    for (StencilKind kind : kinds) {
        for (int n : orders) {
            if (n < 1) throw UsageError("--n must be positive");
            const Stencil& s = StencilTable::shared().get(kind, n);
            const char* name = names[static_cast<int>(kind)];
            if (csv) {
                for (std::size_t i = 0; i < s.offsets.size(); ++i)
                    os << name << ',' << n << ',' << s.offsets[i] << ',' << s.exact[i].str() << ',' << s.norm << '\n';
                continue;
            }
            if (kinds.size() > 1 || orders.size() > 1)
                os << name << " n=" << n << " offsets " << s.lo() << ".." << s.hi() << " norm " << s.norm << ": ";
            for (std::size_t i = 0; i < s.exact.size(); ++i) os << (i ? "," : "") << s.exact[i].str();
            os << '\n';
        }
    }
    return kExitOk;
}

int cmd_oracle(const Options& o, std::ostream& os) {
    std::vector<double> points = o.at;
    if (points.empty()) {
        const double h = o.h.empty() ? 0.1 : constant(o.h, "--h");
        int M = 0;
        try {
            M = steps_for(h, o.t_end.value_or(1.0));
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        for (int j = 0; j <= M; ++j) points.push_back(j * h);
    }
    auto need = [](const std::optional<double>& v, const char* flag) {
        if (!v) throw UsageError(std::string(flag) + " is required for this oracle");
        return *v;
    };
    std::function<double(double)> eval;
    const char* column = "t";
    if (o.kind == "caputo-power") {
        const double a = need(o.alpha, "--alpha");
        const double b = need(o.beta, "--beta");
        std::erase_if(points, [](double t) { return t <= 0.0; });
        eval = [a, b](double t) { return caputo_power(a, b, t); };
    } else if (o.kind == "mittag-leffler") {
        const double a = need(o.alpha, "--alpha");
        const double b = o.beta.value_or(1.0);
        const double tol = o.tol;
        column = "z";
        eval = [a, b, tol](double z) { return mittag_leffler(a, b, z, tol); };
    } else if (o.kind == "relaxation") {
        const double a = need(o.alpha, "--alpha");
        eval = [a](double t) { return relaxation_solution(a, t); };
    } else if (o.kind == "bessel") {
        const double nu = o.nu.value_or(2.0);
        auto series = std::make_shared<SeriesSolution>(bessel_series(nu, o.terms));
        eval = [series](double t) { return (*series)(t); };
    } else {
        throw UsageError("--kind must be caputo-power, mittag-leffler, relaxation or bessel");
    }
    os << column << ",value\n";
    Csv csv(os);
    for (double t : points) csv.row({t, eval(t)});
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Substitution-method solver for linear fractional differential equations", "subfde"};
    app.set_help_flag("--help", "print help");
    app.require_subcommand(1);
    Options o;

    auto add_grid = [&](CLI::App* sub) {
        sub->add_option("--h", o.h, "step size (constant expression, e.g. 2^-9)");
        sub->add_option("--t-end", o.t_end, "end of the interval");
    };
    auto add_problem = [&](CLI::App* sub) {
        sub->add_option("--config", o.config, "problem file")->required();
        sub->add_option("--out", o.out, "output CSV file");
        add_grid(sub);
    };

    auto* solve_cmd = app.add_subcommand("solve", "solve a problem file, CSV of (t, y)");
    add_problem(solve_cmd);

    auto* cond_cmd = app.add_subcommand("condition", "conditioning report for the assembled system");
    add_problem(cond_cmd);
    cond_cmd->add_flag("--fail-on-unconditioned", o.fail_on_unconditioned, "exit 2 when the check fails");

    auto* asm_cmd = app.add_subcommand("assemble", "assembled rows");
    add_problem(asm_cmd);
    asm_cmd->add_flag("--dump", o.dump, "dump every coefficient as (m, k, d)");

    auto* conv_cmd = app.add_subcommand("converge", "convergence table against the exact solution");
    add_problem(conv_cmd);
    conv_cmd->add_option("--levels", o.levels, "number of step halvings plus one");

    auto* deriv_cmd = app.add_subcommand("deriv", "Caputo derivative on a uniform grid");
    deriv_cmd->add_option("--alpha", o.alpha, "order")->required();
    deriv_cmd->add_option("--dnf", o.dnf, "exact n-th derivative of the function");
    deriv_cmd->add_option("--f", o.f, "function, differentiated by stencils");
    deriv_cmd->add_option("--out", o.out, "output CSV file");
    add_grid(deriv_cmd);

    auto* stencil_cmd = app.add_subcommand("stencil", "finite-difference stencil tables");
    stencil_cmd->add_option("--n", o.n, "derivative order(s), default 1..8")->delimiter(',');
    stencil_cmd->add_option("--kind", o.kind, "central, forward, backward or all");
    stencil_cmd->add_option("--format", o.format, "text or csv");
    stencil_cmd->add_option("--out", o.out, "output file");

    auto* oracle_cmd = app.add_subcommand("oracle", "evaluate an analytic reference");
    oracle_cmd->add_option("--kind", o.kind, "caputo-power, mittag-leffler, relaxation or bessel")->required();
    oracle_cmd->add_option("--alpha", o.alpha, "order / first Mittag-Leffler parameter");
    oracle_cmd->add_option("--beta", o.beta, "power / second Mittag-Leffler parameter");
    oracle_cmd->add_option("--nu", o.nu, "Bessel parameter");
    oracle_cmd->add_option("--terms", o.terms, "series terms for bessel");
    oracle_cmd->add_option("--tol", o.tol, "Mittag-Leffler series tolerance");
    oracle_cmd->add_option("--at", o.at, "evaluation points")->delimiter(',');
    oracle_cmd->add_option("--out", o.out, "output CSV file");
    add_grid(oracle_cmd);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    std::ostringstream buffer;
    int status = kExitOk;
    try {
        if (*solve_cmd) status = cmd_solve(o, buffer, err);
        else if (*cond_cmd) status = cmd_condition(o, buffer);
        else if (*asm_cmd) status = cmd_assemble(o, buffer);
        else if (*conv_cmd) status = cmd_converge(o, buffer);
        else if (*deriv_cmd) status = cmd_deriv(o, buffer);
        else if (*stencil_cmd) status = cmd_stencil(o, buffer);
        else status = cmd_oracle(o, buffer);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ConfigError& e) {
        err << "error: " << o.config << ": " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NumericalError& e) {
        err << "numerical failure";
        if (e.row() >= 0) err << " at row " << e.row();
        err << ": " << e.what() << '\n';
        return kExitNumerical;
    } catch (const DomainError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::logic_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    if (o.out.empty()) {
        out << buffer.str();
    } else {
        std::ofstream file(o.out, std::ios::binary);
        if (!file) {
            err << "error: cannot write " << o.out << '\n';
            return kExitUsage;
        }
        file << buffer.str();
    }
    return status;
}

}  // namespace subfde
