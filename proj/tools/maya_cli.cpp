// maya: modified-TASEP / dimer / Young-tableau toolkit.
//
// Subcommands: entropy, verify, sample, kernel, shape. All commands are
// deterministic given their parameters and seed. Exit codes: 0 success,
// 1 verification or numerical failure, 2 usage or parameter error.

#include <CLI11.hpp>
#include <json.hpp>

#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <atomic>
#include <optional>
#include <sstream>
#include <thread>

#include "maya/dimer.hpp"
#include "maya/mtasep.hpp"
#include "maya/shape.hpp"
#include "maya/svg.hpp"
#include "maya/verify.hpp"
#include "maya/young.hpp"

using json = nlohmann::json;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file " + out_path);
    f << text;
}

json tableau_json(const maya::young::PathTableau& t) {
    json order = json::array();
    for (const auto& c : t.order) order.push_back({c.row, c.col});
    return json{{"shape", {{"outer", t.shape.outer.to_string()},
                           {"inner", t.shape.inner.to_string()}}},
                {"order", order}};
}

maya::young::SkewShape parse_skew(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos)
        return maya::young::SkewShape(maya::young::Partition::parse(s), maya::young::Partition());
    return maya::young::SkewShape(maya::young::Partition::parse(s.substr(0, slash)),
                                  maya::young::Partition::parse(s.substr(slash + 1)));
}

struct EntropyRow {
    int L, N;
    double closed, numeric, diff;
};

EntropyRow entropy_row(int L, int N) {
    double closed = maya::mtasep::entropy_closed(L, N);
    auto sp = maya::mtasep::spectral_radius_numeric(maya::mtasep::TransitionMatrix(L, N));
    return {L, N, closed, sp.entropy, std::abs(closed - sp.entropy)};
}

int cmd_entropy(int L, int N, int sweep, double tol, int jobs, const std::string& out) {
    std::vector<std::pair<int, int>> params;
    if (sweep > 0) {
        for (int l = 2; l <= sweep; ++l)
            for (int n = 1; n < l; ++n) params.emplace_back(l, n);
    } else {
        params.emplace_back(L, N);
    }
    std::vector<EntropyRow> rows(params.size());
    if (jobs > 1) {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t)
            pool.emplace_back([&] {
                for (size_t i = next++; i < params.size(); i = next++)
                    rows[i] = entropy_row(params[i].first, params[i].second);
            });
        for (auto& th : pool) th.join();
    } else {
        for (size_t i = 0; i < params.size(); ++i)
            rows[i] = entropy_row(params[i].first, params[i].second);
    }
    std::ostringstream os;
    os << "L,N,entropy_closed,entropy_numeric,abs_diff\n";
    bool ok = true;
    for (const auto& r : rows) {
        os << r.L << ',' << r.N << ',' << fmt(r.closed) << ',' << fmt(r.numeric) << ','
           << fmt(r.diff) << '\n';
        ok = ok && r.diff <= tol;
    }
    write_output(os.str(), out);
    if (!ok) std::cerr << "entropy: discrepancy above tolerance " << fmt(tol) << "\n";
    return ok ? 0 : 1;
}

int cmd_verify(const std::string& suite, const std::string& out) {
    auto reports = maya::verify::verify_suite(suite);
    json j;
    j["schema_version"] = 1;
    j["reports"] = json::array();
    bool all = true;
    for (const auto& r : reports) {
        json checks = json::array();
        for (const auto& c : r.checks)
            checks.push_back({{"name", c.name},
                              {"pass", c.pass},
                              {"value", c.value},
                              {"tolerance", c.tolerance}});
        j["reports"].push_back(
            {{"suite", r.suite}, {"checks", checks}, {"all_pass", r.all_pass()}});
        all = all && r.all_pass();
    }
    j["all_pass"] = all;
    write_output(j.dump(2) + "\n", out);
    return all ? 0 : 1;
}

int cmd_sample_plancherel(long long n, uint64_t seed, const std::string& out) {
    auto t = maya::young::sample_plancherel_path(n, seed);
    write_output(tableau_json(t).dump(2) + "\n", out);
    return 0;
}

int cmd_sample_skew(const std::string& shape, uint64_t seed, const std::string& out) {
    auto t = maya::young::sample_uniform_skew_path(parse_skew(shape), seed);
    write_output(tableau_json(t).dump(2) + "\n", out);
    return 0;
}

int cmd_sample_chain(int L, int N, long long steps, uint64_t seed, const std::string& out) {
    maya::mtasep::ParryChain chain(L, N);
    auto traj = maya::mtasep::simulate_chain(chain, steps, seed);
    std::ostringstream os;
    os << "step,state\n";
    for (size_t i = 0; i < traj.size(); ++i)
        os << i << ',' << chain.transition().state(traj[i]).to_bitstring() << '\n';
    write_output(os.str(), out);
    return 0;
}

int cmd_sample_frozen(int L, int N, double horizon, uint64_t seed, const std::string& out) {
    maya::mtasep::ParryChain chain(L, N);
    auto events = maya::mtasep::sample_frozen_process(chain, horizon, seed);
    std::ostringstream os;
    os << "time,position\n";
    for (const auto& e : events) os << fmt(e.time) << ',' << e.position << '\n';
    write_output(os.str(), out);
    double rate = static_cast<double>(events.size()) / horizon;
    std::cerr << "frozen: " << events.size() << " events, empirical rate " << fmt(rate)
              << ", e^h = " << fmt(std::exp(chain.spectrum().entropy)) << "\n";
    return 0;
}

int cmd_kernel_projection(int L, int N, int offset, const std::string& out,
                          const std::string& svg_path) {
    auto K = maya::mtasep::projection_kernel(L, N, offset);
    std::ostringstream os;
    os << "d,re,im\n";
    for (int d = 0; d < L; ++d)
        os << d << ',' << fmt(K.value(d).real()) << ',' << fmt(K.value(d).imag()) << '\n';
    write_output(os.str(), out);
    if (!svg_path.empty()) {
        std::vector<std::vector<double>> abs_k(static_cast<size_t>(L),
                                               std::vector<double>(static_cast<size_t>(L)));
        for (int a = 0; a < L; ++a)
            for (int b = 0; b < L; ++b)
                abs_k[static_cast<size_t>(a)][static_cast<size_t>(b)] = std::abs(K.value(a - b));
        std::ofstream f(svg_path);
        f << maya::svg::heatmap(abs_k);
    }
    return 0;
}

int cmd_kernel_sine(double a, long long kmax, const std::string& out) {
    std::ostringstream os;
    os << "k,value\n";
    for (long long k = -kmax; k <= kmax; ++k)
        os << k << ',' << fmt(maya::mtasep::sine_kernel(k, a)) << '\n';
    write_output(os.str(), out);
    return 0;
}

int cmd_kernel_finite(int L, int N, double eps, int jmax, const std::string& out) {
    std::ostringstream os;
    os << "j,d,re,im\n";
    for (int j = -jmax; j <= jmax; ++j)
        for (int d = 0; d < L; ++d) {
            auto v = maya::dimer::finite_kernel_closed(L, N, eps, j, d);
            os << j << ',' << d << ',' << fmt(v.real()) << ',' << fmt(v.imag()) << '\n';
        }
    write_output(os.str(), out);
    return 0;
}

int cmd_kernel_limit(int L, int N, double t, int d, std::optional<double> c, double tmax,
                     int tsteps, const std::string& out, const std::string& svg_path) {
    std::ostringstream os;
    if (tsteps > 0) {
        os << "t,d,re,im\n";
        std::vector<std::vector<double>> grid;
        for (int i = -tsteps; i <= tsteps; ++i) {
            double ti = tmax * static_cast<double>(i) / tsteps;
            std::vector<double> row;
            for (int dd = 0; dd < L; ++dd) {
                auto v = maya::dimer::limit_kernel(L, N, ti, dd, c);
                os << fmt(ti) << ',' << dd << ',' << fmt(v.real()) << ',' << fmt(v.imag())
                   << '\n';
                row.push_back(std::abs(v));
            }
            grid.push_back(row);
        }
        if (!svg_path.empty()) {
            std::ofstream f(svg_path);
            f << maya::svg::heatmap(grid);
        }
    } else {
        auto v = maya::dimer::limit_kernel(L, N, t, d, c);
        os << fmt(v.real());
        if (std::abs(v.imag()) > 1e-15) os << (v.imag() >= 0 ? "+" : "") << fmt(v.imag()) << 'i';
        os << '\n';
    }
    write_output(os.str(), out);
    return 0;
}

int cmd_kernel_beads(double rho, double t, long long k, const std::string& out) {
    auto arc = maya::dimer::beads_kernel_arc(rho, t, k);
    std::ostringstream os;
    os << "representation,re,im\n";
    os << "arc," << fmt(arc.real()) << ',' << fmt(arc.imag()) << '\n';
    if (rho < 0.5 && t != 0) {
        auto seg = maya::dimer::beads_kernel_segment(rho, t, k);
        os << "segment," << fmt(seg.real()) << ',' << fmt(seg.imag()) << '\n';
        os << "abs_difference," << fmt(std::abs(arc - seg)) << ",0\n";
    }
    write_output(os.str(), out);
    return 0;
}

int cmd_shape_omega(std::optional<double> t, double x, const std::string& out) {
    double v = t ? maya::shape::omega_tx(*t, x) : maya::shape::omega(x);
    write_output(fmt(v) + "\n", out);
    return 0;
}

maya::shape::ShapeFunction read_shape_csv(const std::string& path, maya::shape::AreaTag tag,
                                          double cells) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open shape CSV " + path);
    std::string line;
    std::getline(f, line);  // header
    std::map<double, std::map<double, double>> rows;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        double t, x, g;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &t, &x, &g) != 3)
            throw std::invalid_argument("bad shape CSV row: " + line);
        rows[t][x] = g;
    }
    maya::shape::ShapeFunction g;
    g.tag = tag;
    g.cells = cells;
    for (const auto& [t, row] : rows) g.t_grid.push_back(t);
    if (rows.empty()) throw std::invalid_argument("empty shape CSV");
    for (const auto& [x, v] : rows.begin()->second) g.x_grid.push_back(x);
    for (const auto& [t, row] : rows) {
        if (row.size() != g.x_grid.size())
            throw std::invalid_argument("shape CSV is not a full rectangular grid");
        std::vector<double> vals;
        for (const auto& [x, v] : row) vals.push_back(v);
        g.values.push_back(std::move(vals));
    }
    return g;
}

int cmd_shape_functional(bool vkls, const std::string& in_csv, const std::string& tag_name,
                         double cells, int mesh, const std::string& out,
                         const std::string& csv_path, const std::string& svg_path) {
    using namespace maya::shape;
    AreaTag tag = AreaTag::area1;
    if (tag_name == "area2") tag = AreaTag::area2;
    else if (tag_name == "unrescaled") tag = AreaTag::unrescaled;
    else if (tag_name != "area1") throw std::invalid_argument("unknown area tag " + tag_name);
    ShapeFunction g;
    FunctionalValue v, v_half;
    if (vkls) {
        size_t nx = static_cast<size_t>(mesh);
        size_t nt = static_cast<size_t>(3 * mesh / 4);
        g = vkls_shape(nt, nx);
        v = functional_L(g);
        v_half = functional_L(vkls_shape(nt / 2, nx / 2));
    } else if (!in_csv.empty()) {
        g = read_shape_csv(in_csv, tag, cells);
        v = functional_L(g);
        v_half = v;  // no refinement available for external surfaces
    } else {
        throw std::invalid_argument("shape functional: give --vkls or --in surface.csv");
    }
    std::ostringstream os;
    os << "value," << fmt(v.value) << "\n";
    os << "error_estimate," << fmt(std::abs(v.value - v_half.value)) << "\n";
    os << "swept_area," << fmt(v.swept_area) << "\n";
    write_output(os.str(), out);
    if (!csv_path.empty()) {
        std::ofstream f(csv_path);
        shape_to_csv(g, f);
    }
    if (!svg_path.empty()) {
        // level curves g(t_i, .) for a few t_i
        maya::svg::Document doc(800, 500);
        double x0 = g.x_grid.front(), x1 = g.x_grid.back();
        for (double level : {0.25, 0.5, 0.75, 1.0}) {
            size_t it = static_cast<size_t>(std::lround(std::sqrt(level) * (g.nt() - 1)));
            std::vector<std::pair<double, double>> pts;
            for (size_t ix = 0; ix < g.nx(); ++ix) {
                double px = (g.x_grid[ix] - x0) / (x1 - x0) * 800.0;
                double py = 500.0 - g.values[it][ix] / 1.6 * 500.0;
                pts.emplace_back(px, py);
            }
            doc.polyline(pts, "black", 1.0);
        }
        std::ofstream f(svg_path);
        f << doc.str();
    }
    return 0;
}

int cmd_shape_residual(double t, double x, double h, const std::string& out) {
    write_output(fmt(maya::shape::el_residual_vkls(t, x, h)) + "\n", out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"modified TASEP, dimer kernels, and Young tableau shapes"};
    app.set_config("--config");
    app.require_subcommand(1);

    std::string out;
    app.add_option("--out", out, "write primary output to this file (default stdout)")
        ->capture_default_str();

    // entropy
    auto* entropy = app.add_subcommand("entropy", "closed-form vs numeric chain entropy");
    int eL = 0, eN = 0, sweep = 0, jobs = 1;
    double tol = 1e-10;
    entropy->add_option("L", eL, "circle length");
    entropy->add_option("N", eN, "stone count");
    entropy->add_option("--sweep", sweep, "check all 2 <= L <= Lmax, 1 <= N < L");
    entropy->add_option("--tol", tol, "failure tolerance")->capture_default_str();
    entropy->add_option("--jobs", jobs, "parallel sweep workers")->capture_default_str();

    // verify
    auto* verify = app.add_subcommand("verify", "run module invariant suites");
    std::string suite;
    verify->add_option("suite", suite, "young|mtasep|dimer|shape|all")->required();

    // sample
    auto* sample = app.add_subcommand("sample", "samplers (deterministic per seed)");
    sample->require_subcommand(1);
    uint64_t seed = 0;
    sample->add_option("--seed", seed, "rng seed")->capture_default_str();
    auto* sp = sample->add_subcommand("plancherel", "plancherel growth path");
    long long pn = 100;
    sp->add_option("--n", pn, "path length")->required();
    auto* ss = sample->add_subcommand("skew", "uniform skew standard tableau");
    std::string skew_shape;
    ss->add_option("--shape", skew_shape, "outer/inner, e.g. 2,2/1")->required();
    auto* sc = sample->add_subcommand("chain", "stationary Parry trajectory");
    int cL = 6, cN = 3;
    long long csteps = 100;
    sc->add_option("--L", cL)->required();
    sc->add_option("--N", cN)->required();
    sc->add_option("--steps", csteps)->required();
    auto* sf = sample->add_subcommand("frozen", "frozen-limit jump events");
    int fL = 6, fN = 3;
    double horizon = 100;
    sf->add_option("--L", fL)->required();
    sf->add_option("--N", fN)->required();
    sf->add_option("--horizon", horizon)->required();

    // kernel
    auto* kernel = app.add_subcommand("kernel", "correlation kernels");
    kernel->require_subcommand(1);
    auto* kp = kernel->add_subcommand("projection", "Fourier projection kernel");
    int kL = 6, kN = 3, koffset = 0;
    std::string svg_path;
    kp->add_option("--L", kL)->required();
    kp->add_option("--N", kN)->required();
    kp->add_option("--offset", koffset, "window offset");
    kp->add_option("--svg", svg_path, "write |K| heatmap SVG");
    auto* ksin = kernel->add_subcommand("sine", "discrete sine kernel");
    double ka = 0.3;
    long long kmax = 10;
    ksin->add_option("--a", ka, "density in (0,1)")->required();
    ksin->add_option("--kmax", kmax);
    auto* kf = kernel->add_subcommand("finite", "finite-epsilon closed kernel");
    double keps = 0.05;
    int kjmax = 3;
    int kfL = 4, kfN = 2;
    kf->add_option("--L", kfL)->required();
    kf->add_option("--N", kfN)->required();
    kf->add_option("--eps", keps)->required();
    kf->add_option("--jmax", kjmax);
    auto* kl = kernel->add_subcommand("limit", "frozen-limit kernel");
    int klL = 6, klN = 3, kld = 0, ktsteps = 0;
    double klt = 0.0, ktmax = 2.0;
    double klc = 0.0;
    bool has_c = false;
    kl->add_option("--L", klL)->required();
    kl->add_option("--N", klN)->required();
    kl->add_option("--t", klt);
    kl->add_option("--d", kld);
    auto* copt = kl->add_option("--c", klc, "gauge constant");
    kl->add_option("--grid", ktsteps, "emit a (t,d) grid with this many t steps each side");
    kl->add_option("--tmax", ktmax);
    kl->add_option("--svg", svg_path, "write |K| heatmap SVG of the grid");
    auto* kb = kernel->add_subcommand("beads", "infinite-circle beads kernel");
    double krho = 0.3, kbt = 0.7;
    long long kbk = 1;
    kb->add_option("--rho", krho)->required();
    kb->add_option("--t", kbt)->required();
    kb->add_option("--k", kbk)->required();

    // shape
    auto* shape = app.add_subcommand("shape", "variational layer");
    shape->require_subcommand(1);
    auto* so = shape->add_subcommand("omega", "VKLS curve");
    double sx = 0.0, st = 1.0;
    bool st_given = false;
    so->add_option("--x", sx)->required();
    auto* stopt = so->add_option("--t", st, "evaluate Omega(t,x) instead of Omega(x)");
    auto* sfn = shape->add_subcommand("functional", "shape functional quadrature");
    int mesh = 1200;
    bool vkls = false;
    std::string csv_path, in_csv, tag_name = "area1";
    double cells = 1.0;
    sfn->add_flag("--vkls", vkls, "evaluate on the VKLS surface");
    sfn->add_option("--in", in_csv, "read a surface from CSV (t,x,g)");
    sfn->add_option("--tag", tag_name, "area1|area2|unrescaled")->capture_default_str();
    sfn->add_option("--cells", cells, "cell count n for the unrescaled tag");
    sfn->add_option("--mesh", mesh)->capture_default_str();
    sfn->add_option("--csv", csv_path, "dump the sampled surface as CSV");
    sfn->add_option("--svg", svg_path, "write level-curve SVG");
    auto* sr = shape->add_subcommand("residual", "Euler-Lagrange residual");
    double rt = 0.7, rx = 0.3, rh = 1e-3;
    bool rvkls = false;
    sr->add_flag("--vkls", rvkls, "evaluate on the VKLS surface");
    sr->add_option("--t", rt)->required();
    sr->add_option("--x", rx)->required();
    sr->add_option("--step", rh, "stencil spacing")->capture_default_str();

    for (CLI::App* s : {entropy, verify, sample, kernel, shape, sp, ss, sc, sf, kp, ksin, kf,
                        kl, kb, so, sfn, sr})
        s->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*entropy) {
            if (sweep == 0 && (eL == 0 || eN == 0))
                throw std::invalid_argument("entropy: give L N or --sweep Lmax");
            return cmd_entropy(eL, eN, sweep, tol, jobs, out);
        }
        if (*verify) return cmd_verify(suite, out);
        if (*sample) {
            if (*sp) return cmd_sample_plancherel(pn, seed, out);
            if (*ss) return cmd_sample_skew(skew_shape, seed, out);
            if (*sc) return cmd_sample_chain(cL, cN, csteps, seed, out);
            if (*sf) return cmd_sample_frozen(fL, fN, horizon, seed, out);
        }
        if (*kernel) {
            if (*kp) return cmd_kernel_projection(kL, kN, koffset, out, svg_path);
            if (*ksin) return cmd_kernel_sine(ka, kmax, out);
            if (*kf) return cmd_kernel_finite(kfL, kfN, keps, kjmax, out);
            if (*kl) {
                has_c = copt->count() > 0;
                return cmd_kernel_limit(klL, klN, klt, kld,
                                        has_c ? std::optional<double>(klc) : std::nullopt,
                                        ktmax, ktsteps, out, svg_path);
            }
            if (*kb) return cmd_kernel_beads(krho, kbt, kbk, out);
        }
        if (*shape) {
            if (*so) {
                st_given = stopt->count() > 0;
                return cmd_shape_omega(st_given ? std::optional<double>(st) : std::nullopt, sx,
                                       out);
            }
            if (*sfn)
                return cmd_shape_functional(vkls, in_csv, tag_name, cells, mesh, out, csv_path,
                                            svg_path);
            if (*sr) {
                if (!rvkls)
                    throw std::invalid_argument(
                        "shape residual: the closed-form stencil needs --vkls");
                return cmd_shape_residual(rt, rx, rh, out);
            }
        }
        throw std::invalid_argument("no subcommand selected");
    } catch (const std::domain_error& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::length_error& e) {
        std::cerr << "size error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
