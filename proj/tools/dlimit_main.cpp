#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dlimit/io.hpp"

namespace {

using namespace dlimit;

GridSpec parse_grid(const std::string& text, int px) {
    // xmin,ymin,xmax,ymax
    std::array<double, 4> v{};
    std::size_t pos = 0;
    for (int k = 0; k < 4; ++k) {
        std::size_t used = 0;
        v[k] = std::stod(text.substr(pos), &used);
        pos += used;
        if (k < 3) {
            if (pos >= text.size() || text[pos] != ',')
                throw std::invalid_argument("grid: expected xmin,ymin,xmax,ymax");
            ++pos;
        }
    }
    if (pos != text.size()) throw std::invalid_argument("grid: trailing characters");
    GridSpec g{v[0], v[2], v[1], v[3], px, px};
    validate(g);
    return g;
}

std::vector<int> parse_int_list(const std::string& text) {
    // comma-separated values, "a..b" expands to a range
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto dots = item.find("..");
        if (dots != std::string::npos) {
            const int lo = std::stoi(item.substr(0, dots));
            const int hi = std::stoi(item.substr(dots + 2));
            for (int v = lo; v <= hi; ++v) out.push_back(v);
        } else if (!item.empty()) {
            out.push_back(std::stoi(item));
        }
    }
    if (out.empty()) throw std::invalid_argument("expected a nonempty integer list");
    return out;
}

TargetSet parse_target(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("target: expected kind:params, e.g. circle:1.0");
    const std::string kind = text.substr(0, colon);
    const std::string args = text.substr(colon + 1);
    if (kind == "circle") return Circle{std::stod(args)};
    if (kind == "disk") return ClosedDisk{std::stod(args)};
    if (kind == "annulus") {
        const auto comma = args.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("target: annulus needs inner,outer");
        return ClosedAnnulus{std::stod(args.substr(0, comma)), std::stod(args.substr(comma + 1))};
    }
    if (kind == "limacon") return Limacon{parse_complex(args)};
    throw std::invalid_argument("target: unknown kind " + kind);
}

MapFamily build_family(const std::string& family, int n, double t, Complex c, Complex a) {
    if (family == "P") return PowerPoly{n, c};
    if (family == "F") return RealPower{t, c};
    if (family == "R") return PerturbedPower{n, c, a};
    throw std::invalid_argument("family must be P, F or R");
}

int cmd_render(const std::string& family, int n, double t, const std::string& c_text,
               const std::string& a_text, const std::string& grid_text, int px, double radius,
               int max_iter, bool boundary, const std::string& out) {
    const MapFamily f = build_family(family, n, t, parse_complex(c_text), parse_complex(a_text));
    const GridSpec grid = parse_grid(grid_text, px);
    const EscapeSpec spec{radius, max_iter};
    SetRaster raster = filled_julia_raster(f, grid, spec);
    if (boundary) raster = boundary_raster(raster);
    write_raster_pgm(raster, out);
    std::cout << out << ": " << raster.count() << " set cells of " << raster.mask.size() << "\n";
    return 0;
}

int cmd_mset(const std::string& family, int n, double t, const std::string& c_text,
             const std::string& mode, const std::string& grid_text, int px, double radius,
             int max_iter, const std::string& out) {
    const MapFamily tmpl =
        build_family(family, n, t, parse_complex(c_text), Complex{1.0, 0.0});
    const GridSpec grid = parse_grid(grid_text, px);
    const EscapeSpec spec{radius, max_iter};
    const ParamMode m = mode == "both" ? ParamMode::Both : ParamMode::One;
    const SetRaster raster = parameter_raster(tmpl, grid, spec, m);
    write_raster_pgm(raster, out);
    std::cout << out << ": " << raster.count() << " set cells of " << raster.mask.size() << "\n";
    return 0;
}

int cmd_hausdorff(const std::string& raster_path, const std::string& raster2_path,
                  const std::string& target_text, int samples) {
    const SetRaster a = read_raster_pgm(raster_path);
    HausdorffReport rep;
    std::string reference;
    if (!raster2_path.empty()) {
        const SetRaster b = read_raster_pgm(raster2_path);
        rep = hausdorff_raster(a, b);
        reference = raster2_path;
    } else if (!target_text.empty()) {
        const TargetSet target = parse_target(target_text);
        rep = hausdorff_to_target(a, target, samples);
        reference = describe(target);
    } else {
        throw std::invalid_argument("hausdorff: need --raster2 or --target");
    }
    std::cout << report_json(rep, a.grid, raster_path, reference).dump(2) << "\n";
    return 0;
}

int cmd_sweep(const std::string& config_path, const SweepOverrides& overrides) {
    SweepConfig cfg;
    if (!config_path.empty()) {
        std::ifstream is(config_path);
        if (!is) throw std::invalid_argument("cannot open config " + config_path);
        nlohmann::json j;
        is >> j;
        cfg = sweep_config_from_json(j);
    }
    apply_overrides(cfg, overrides);
    const auto rows = run_sweep(cfg);
    std::cout << sweep_csv(rows, cfg.timing);
    return 0;
}

int cmd_centers(int n, const std::string& out) {
    std::vector<CenterReport> reports;
    reports.reserve(n - 1);
    for (int k = 0; k <= n - 2; ++k) reports.push_back(verify_center_dynamics(n, k));
    const std::string csv = centers_csv(n, reports);
    if (out.empty())
        std::cout << csv;
    else
        write_text_atomic(out, csv);
    double worst = 0;
    for (const auto& r : reports)
        worst = std::max({worst, r.residual_plus, r.residual_minus});
    std::cout << (n - 1) << " centers, worst residual " << worst << "\n";
    return 0;
}

int cmd_roots(int n, const std::string& c_text, const std::string& out) {
    const auto solutions = critical_fixed_solutions(n, parse_complex(c_text));
    const std::string csv = solutions_csv(n, solutions);
    if (out.empty())
        std::cout << csv;
    else
        write_text_atomic(out, csv);
    double worst = 0;
    for (const auto& s : solutions) worst = std::max(worst, s.residual);
    std::cout << solutions.size() << " roots, worst residual " << worst << "\n";
    return 0;
}

int cmd_probe_annulus(const std::string& family, const std::string& c_text, double eta,
                      double eps, const std::string& n_list, const std::string& which,
                      int px, int max_iter) {
    const Complex c = parse_complex(c_text);
    const auto ns = parse_int_list(n_list);
    std::vector<double> values(ns.begin(), ns.end());

    TargetSet region{Circle{1.0}};
    RasterProducer produce;
    double epsilon = 0;
    if (family == "P") {
        region = pnc_annulus_region(c, eta);
        const GridSpec grid{-2.0, 2.0, -2.0, 2.0, px, px};
        const bool want_j = which == "J";
        produce = [c, grid, max_iter, want_j](double v) {
            auto [k, j] = julia_raster_pair(PowerPoly{int(std::lround(v)), c}, grid,
                                            EscapeSpec{0.0, max_iter});
            return want_j ? j : k;
        };
    } else if (family == "R0") {
        region = ClosedAnnulus{0.25 - eps, 0.25 + eps};
        const GridSpec grid{-0.6, 0.6, -0.6, 0.6, px, px};
        produce = [grid, max_iter](double v) {
            return parameter_raster(PerturbedPower{int(std::lround(v)), Complex{}, {1.0, 0.0}},
                                    grid, EscapeSpec{0.0, max_iter});
        };
    } else if (family == "Rc") {
        region = Limacon{c};
        epsilon = eps;
        const double u = annulus_bounds(std::abs(c)).upper;
        const double half = std::sqrt(u) + 3 * eps + 0.2;
        const GridSpec grid{-half, half, -half, half, px, px};
        produce = [c, grid, max_iter](double v) {
            return parameter_raster(PerturbedPower{int(std::lround(v)), c, {1.0, 0.0}}, grid,
                                    EscapeSpec{0.0, max_iter});
        };
    } else {
        throw std::invalid_argument("probe annulus: family must be P, R0 or Rc");
    }

    GridSpec slack_grid{-2.0, 2.0, -2.0, 2.0, px, px};
    const auto probe =
        annulus_containment_probe(produce, region, epsilon, values, slack_grid.cell_diag());
    for (const auto& row : probe.rows)
        std::printf("n=%g contained=%d violations=%zu worst_excess=%.6g\n", row.sweep_value,
                    row.contained ? 1 : 0, row.violations, row.worst_excess);
    if (probe.contained_from)
        std::printf("contained_from=%g\n", *probe.contained_from);
    else
        std::printf("contained_from=none\n");
    return 0;
}

int cmd_probe_circle(const std::string& c_text, const std::string& n_list, int max_iter) {
    const auto rows =
        boundary_circle_probe(parse_complex(c_text), parse_int_list(n_list), {0.0, max_iter});
    for (const auto& row : rows)
        std::printf("n=%d member=%d certified=%d\n", row.n, row.member ? 1 : 0,
                    row.certified ? 1 : 0);
    return 0;
}

int cmd_probe_m2(const std::string& c_text, const std::string& n_list, int px, int max_iter) {
    const Complex c = parse_complex(c_text);
    const double half = std::sqrt(annulus_bounds(std::abs(c)).upper) + 0.4;
    const GridSpec grid{-half, half, -half, half, px, px};
    const auto probe =
        m2_emptiness_probe(c, parse_int_list(n_list), grid, EscapeSpec{0.0, max_iter});
    for (const auto& row : probe.rows)
        std::printf("n=%d set_cells=%zu\n", row.n, row.set_cells);
    if (probe.empty_from)
        std::printf("empty_from=%d\n", *probe.empty_from);
    else
        std::printf("empty_from=none\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Julia and Mandelbrot-type sets of z^n+c, z^t+c and z^n+c+a/z^n, their "
                 "Hausdorff distances to analytic limit sets, and the explicit algebra "
                 "behind the limits"};
    app.require_subcommand(1);

    // render
    auto* render = app.add_subcommand("render", "filled Julia raster (PGM + sidecar)");
    std::string r_family = "P", r_c = "0+0i", r_a = "1+0i", r_grid = "-2,-2,2,2", r_out;
    int r_n = 2, r_px = 512, r_max_iter = julia_max_iter_default;
    double r_t = 2.0, r_radius = 0.0;
    bool r_boundary = false;
    render->add_option("--family", r_family, "P, F or R");
    render->add_option("--n", r_n, "degree (P, R)");
    render->add_option("--t", r_t, "real exponent (F)");
    render->add_option("--c", r_c, "c as re+imi");
    render->add_option("--a", r_a, "a as re+imi (R)");
    render->add_option("--grid", r_grid, "xmin,ymin,xmax,ymax");
    render->add_option("--px", r_px, "cells per side");
    render->add_option("--radius", r_radius, "escape radius (0: certified bound)");
    render->add_option("--max-iter", r_max_iter, "iteration cap");
    render->add_flag("--boundary", r_boundary, "emit the boundary (Julia) raster");
    render->add_option("--out", r_out, "output PGM path")->required();

    // mset
    auto* mset = app.add_subcommand("mset", "parameter-plane raster (PGM + sidecar)");
    std::string m_family = "P", m_c = "0+0i", m_mode = "one", m_grid = "-2,-2,2,2", m_out;
    int m_n = 2, m_px = 512, m_max_iter = param_max_iter_default;
    double m_t = 2.0, m_radius = 0.0;
    mset->add_option("--family", m_family, "P, F or R");
    mset->add_option("--n", m_n, "degree (P, R)");
    mset->add_option("--t", m_t, "real exponent (F)");
    mset->add_option("--c", m_c, "fixed c for the R family");
    mset->add_option("--mode", m_mode, "one or both (R with c != 0)");
    mset->add_option("--grid", m_grid, "xmin,ymin,xmax,ymax");
    mset->add_option("--px", m_px, "cells per side");
    mset->add_option("--radius", m_radius, "escape radius (0: certified bound)");
    mset->add_option("--max-iter", m_max_iter, "iteration cap");
    mset->add_option("--out", m_out, "output PGM path")->required();

    // hausdorff
    auto* haus = app.add_subcommand("hausdorff", "distance report (JSON to stdout)");
    std::string h_raster, h_raster2, h_target;
    int h_samples = 4096;
    haus->add_option("--raster", h_raster, "PGM of set A")->required();
    haus->add_option("--raster2", h_raster2, "PGM of set B");
    haus->add_option("--target", h_target, "circle:r | disk:r | annulus:r,R | limacon:c");
    haus->add_option("--samples", h_samples, "boundary samples for circle/limacon");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "convergence sweep from a JSON config");
    std::string s_config;
    SweepOverrides s_over;
    int s_max_iter = -1;
    double s_radius = -1;
    std::string s_csv, s_manifest, s_dir;
    bool s_timing = false;
    sweep->add_option("--config", s_config, "JSON config (SweepConfig fields, snake_case)");
    sweep->add_option("--max-iter", s_max_iter, "override iteration cap");
    sweep->add_option("--radius", s_radius, "override escape radius");
    sweep->add_option("--out-csv", s_csv, "override CSV path");
    sweep->add_option("--out-manifest", s_manifest, "override manifest path");
    sweep->add_option("--out-dir", s_dir, "override raster directory");
    sweep->add_flag("--timing", s_timing, "write real elapsed_ms (breaks byte determinism)");

    // centers
    auto* centers = app.add_subcommand("centers", "superattracting centers a_n^k with residuals");
    int c_n = 3;
    std::string c_out;
    centers->add_option("--n", c_n, "degree")->required();
    centers->add_option("--out", c_out, "CSV path (stdout when omitted)");

    // roots
    auto* roots = app.add_subcommand("roots", "sector-confined solutions of 2w^n - w + c = 0");
    int t_n = 3;
    std::string t_c = "1+0i", t_out;
    roots->add_option("--n", t_n, "degree")->required();
    roots->add_option("--c", t_c, "c as re+imi")->required();
    roots->add_option("--out", t_out, "CSV path (stdout when omitted)");

    // probe
    auto* probe = app.add_subcommand("probe", "annulus containment, circle membership, M2 emptiness");
    std::string p_kind, p_family = "P", p_c = "2+0i", p_nlist = "5,9,15", p_which = "K";
    double p_eta = 1.0, p_eps = 0.1;
    int p_px = 400, p_max_iter = 0;
    probe->add_option("--kind", p_kind, "annulus | circle | m2")->required();
    probe->add_option("--family", p_family, "annulus probe: P, R0 or Rc");
    probe->add_option("--c", p_c, "c as re+imi");
    probe->add_option("--eta", p_eta, "annulus width for the P corollary");
    probe->add_option("--eps", p_eps, "epsilon for R0/Rc regions");
    probe->add_option("--n-list", p_nlist, "comma list, ranges as a..b");
    probe->add_option("--set", p_which, "K or J (P-family annulus probe)");
    probe->add_option("--px", p_px, "cells per side");
    probe->add_option("--max-iter", p_max_iter, "iteration cap (0: kind default)");

    try {
        app.parse(argc, argv);

        if (*render)
            return cmd_render(r_family, r_n, r_t, r_c, r_a, r_grid, r_px, r_radius, r_max_iter,
                              r_boundary, r_out);
        if (*mset)
            return cmd_mset(m_family, m_n, m_t, m_c, m_mode, m_grid, m_px, m_radius, m_max_iter,
                            m_out);
        if (*haus) return cmd_hausdorff(h_raster, h_raster2, h_target, h_samples);
        if (*sweep) {
            if (s_max_iter >= 0) s_over.max_iter = s_max_iter;
            if (s_radius >= 0) s_over.radius = s_radius;
            if (!s_csv.empty()) s_over.out_csv = s_csv;
            if (!s_manifest.empty()) s_over.out_manifest = s_manifest;
            if (!s_dir.empty()) s_over.out_raster_dir = s_dir;
            if (s_timing) s_over.timing = true;
            return cmd_sweep(s_config, s_over);
        }
        if (*centers) return cmd_centers(c_n, c_out);
        if (*roots) return cmd_roots(t_n, t_c, t_out);
        if (*probe) {
            if (p_kind == "annulus")
                return cmd_probe_annulus(p_family, p_c, p_eta, p_eps, p_nlist, p_which, p_px,
                                         p_max_iter > 0 ? p_max_iter
                                         : p_family == "P" ? julia_max_iter_default
                                                           : param_max_iter_default);
            if (p_kind == "circle")
                return cmd_probe_circle(p_c, p_nlist,
                                        p_max_iter > 0 ? p_max_iter : param_max_iter_default);
            if (p_kind == "m2")
                return cmd_probe_m2(p_c, p_nlist, p_px,
                                    p_max_iter > 0 ? p_max_iter : param_max_iter_default);
            throw std::invalid_argument("probe: kind must be annulus, circle or m2");
        }
        throw std::invalid_argument("no subcommand");
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "argument error: " << e.what() << "\n";
        return 1;
    } catch (const dlimit::PgmParseError& e) {
        std::cerr << "parse error at byte " << e.byte_offset << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
