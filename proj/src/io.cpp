#include "dlimit/io.hpp"

#include <cctype>
#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

namespace dlimit {

using detail::overloaded;

namespace {

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string fmt_full(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

std::vector<std::uint8_t> encode_pgm(const SetRaster& r) {
    std::string header =
        "P5\n" + std::to_string(r.grid.nx) + " " + std::to_string(r.grid.ny) + "\n255\n";
    std::vector<std::uint8_t> bytes(header.begin(), header.end());
    bytes.reserve(bytes.size() + r.mask.size());
    for (int j = r.grid.ny - 1; j >= 0; --j)
        for (int i = 0; i < r.grid.nx; ++i)
            bytes.push_back(r.test(i, j) ? 0x00 : 0xFF);
    return bytes;
}

namespace {

// whitespace/comment-skipping PNM token reader
std::size_t skip_pnm_space(const std::vector<std::uint8_t>& b, std::size_t pos) {
    while (pos < b.size()) {
        if (std::isspace(b[pos])) {
            ++pos;
        } else if (b[pos] == '#') {
            while (pos < b.size() && b[pos] != '\n') ++pos;
        } else {
            break;
        }
    }
    return pos;
}

long read_pnm_int(const std::vector<std::uint8_t>& b, std::size_t& pos, const char* what) {
    pos = skip_pnm_space(b, pos);
    if (pos >= b.size() || !std::isdigit(b[pos]))
        throw PgmParseError(std::string("pgm: expected ") + what, pos);
    long value = 0;
    while (pos < b.size() && std::isdigit(b[pos])) {
        value = value * 10 + (b[pos] - '0');
        if (value > 1'000'000'000) throw PgmParseError("pgm: value out of range", pos);
        ++pos;
    }
    return value;
}

}  // namespace

DecodedPgm decode_pgm(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5')
        throw PgmParseError("pgm: missing P5 magic", 0);
    std::size_t pos = 2;
    const long w = read_pnm_int(bytes, pos, "width");
    const long h = read_pnm_int(bytes, pos, "height");
    const long maxval = read_pnm_int(bytes, pos, "maxval");
    if (w <= 0 || h <= 0) throw PgmParseError("pgm: nonpositive dimensions", pos);
    if (maxval <= 0 || maxval > 255) throw PgmParseError("pgm: maxval must be in 1..255", pos);
    if (pos >= bytes.size() || !std::isspace(bytes[pos]))
        throw PgmParseError("pgm: missing whitespace after maxval", pos);
    ++pos;

    const std::size_t expected = std::size_t(w) * std::size_t(h);
    const std::size_t actual = bytes.size() - pos;
    if (actual < expected)
        throw PgmParseError("pgm: truncated payload, expected " + std::to_string(expected) +
                                " bytes, got " + std::to_string(actual),
                            pos);

    DecodedPgm out;
    out.width = int(w);
    out.height = int(h);
    out.mask.assign(expected, 0);
    for (long row = 0; row < h; ++row) {
        const long j = h - 1 - row;  // PGM rows are top-down
        for (long i = 0; i < w; ++i)
            out.mask[std::size_t(j) * w + i] = bytes[pos + row * w + i] < 128 ? 1 : 0;
    }
    return out;
}

SetRaster raster_from_pgm(const std::vector<std::uint8_t>& bytes,
                          const std::optional<GridSpec>& grid,
                          const std::optional<RasterMeta>& meta) {
    const DecodedPgm decoded = decode_pgm(bytes);
    SetRaster out;
    out.grid = grid.value_or(
        GridSpec{0.0, double(decoded.width), 0.0, double(decoded.height), decoded.width,
                 decoded.height});
    if (out.grid.nx != decoded.width || out.grid.ny != decoded.height)
        throw std::invalid_argument("raster_from_pgm: grid dimensions disagree with the image");
    out.mask = decoded.mask;
    out.meta = meta.value_or(RasterMeta{});
    return out;
}

std::string sidecar_text(const SetRaster& r) {
    std::ostringstream os;
    std::string family = "none";
    int n = 0;
    double t = 0;
    Complex c{}, a{};
    if (r.meta.family) {
        std::visit(overloaded{[&](const PowerPoly& p) {
                                  family = "P";
                                  n = p.n;
                                  c = p.c;
                              },
                              [&](const RealPower& p) {
                                  family = "F";
                                  t = p.t;
                                  c = p.c;
                              },
                              [&](const PerturbedPower& p) {
                                  family = "R";
                                  n = p.n;
                                  c = p.c;
                                  a = p.a;
                              }},
                   *r.meta.family);
    }
    os << "family = " << family << "\n";
    os << "n = " << n << "\n";
    os << "t = " << fmt_full(t) << "\n";
    os << "c = " << format_complex(c) << "\n";
    os << "a = " << format_complex(a) << "\n";
    os << "x_min = " << fmt_full(r.grid.x_min) << "\n";
    os << "x_max = " << fmt_full(r.grid.x_max) << "\n";
    os << "y_min = " << fmt_full(r.grid.y_min) << "\n";
    os << "y_max = " << fmt_full(r.grid.y_max) << "\n";
    os << "nx = " << r.grid.nx << "\n";
    os << "ny = " << r.grid.ny << "\n";
    os << "radius = " << fmt_full(r.meta.spec.radius) << "\n";
    os << "maxIter = " << r.meta.spec.max_iter << "\n";
    os << "kind = " << to_string(r.meta.kind) << "\n";
    os << "mode = " << (r.meta.mode ? to_string(*r.meta.mode) : "none") << "\n";
    return os.str();
}

void parse_sidecar(const std::string& text, GridSpec& grid, RasterMeta& meta) {
    std::map<std::string, std::string> kv;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    auto want = [&](const std::string& key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end()) throw std::invalid_argument("sidecar: missing key " + key);
        return it->second;
    };

    grid.x_min = std::stod(want("x_min"));
    grid.x_max = std::stod(want("x_max"));
    grid.y_min = std::stod(want("y_min"));
    grid.y_max = std::stod(want("y_max"));
    grid.nx = std::stoi(want("nx"));
    grid.ny = std::stoi(want("ny"));

    meta.spec.radius = std::stod(want("radius"));
    meta.spec.max_iter = std::stoi(want("maxIter"));

    const std::string family = want("family");
    const Complex c = parse_complex(want("c"));
    if (family == "P")
        meta.family = PowerPoly{std::stoi(want("n")), c};
    else if (family == "F")
        meta.family = RealPower{std::stod(want("t")), c};
    else if (family == "R")
        meta.family = PerturbedPower{std::stoi(want("n")), c, parse_complex(want("a"))};
    else
        meta.family = std::nullopt;

    const std::string kind = kv.count("kind") ? kv["kind"] : "synthetic";
    if (kind == "julia") meta.kind = RasterKind::Julia;
    else if (kind == "boundary") meta.kind = RasterKind::Boundary;
    else if (kind == "parameter") meta.kind = RasterKind::Parameter;
    else meta.kind = RasterKind::Synthetic;

    const std::string mode = kv.count("mode") ? kv["mode"] : "none";
    if (mode == "one") meta.mode = ParamMode::One;
    else if (mode == "both") meta.mode = ParamMode::Both;
    else meta.mode = std::nullopt;
}

void write_file_atomic(const std::filesystem::path& path, const void* data, std::size_t size) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        os.write(static_cast<const char*>(data), std::streamsize(size));
        if (!os) throw std::runtime_error("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
    write_file_atomic(path, text.data(), text.size());
}

void write_raster_pgm(const SetRaster& r, const std::filesystem::path& path) {
    const auto bytes = encode_pgm(r);
    write_file_atomic(path, bytes.data(), bytes.size());
    write_text_atomic(path.string() + ".meta", sidecar_text(r));
}

SetRaster read_raster_pgm(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::invalid_argument("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(is)),
                                    std::istreambuf_iterator<char>());

    const std::filesystem::path side = path.string() + ".meta";
    if (std::filesystem::exists(side)) {
        std::ifstream ms(side);
        std::stringstream buf;
        buf << ms.rdbuf();
        GridSpec grid{};
        RasterMeta meta{};
        parse_sidecar(buf.str(), grid, meta);
        return raster_from_pgm(bytes, grid, meta);
    }
    return raster_from_pgm(bytes);
}

Complex parse_complex(const std::string& text) {
    // "a", "a+bi", "a-bi", "bi" -- no spaces, scientific notation fine
    const char* s = text.c_str();
    if (*s == '\0') throw std::invalid_argument("empty complex literal");
    char* end = nullptr;
    double first = std::strtod(s, &end);
    if (end == s) throw std::invalid_argument("bad complex literal: " + text);
    if (*end == '\0') return {first, 0.0};
    if (*end == 'i' && end[1] == '\0') return {0.0, first};

    const char* rest = end;
    if (*rest != '+' && *rest != '-')
        throw std::invalid_argument("bad complex literal: " + text);
    char* end2 = nullptr;
    double second = std::strtod(rest, &end2);
    if (end2 == rest || *end2 != 'i' || end2[1] != '\0')
        throw std::invalid_argument("bad complex literal: " + text);
    return {first, second};
}

std::string format_complex(Complex z) {
    std::string out = fmt_full(z.real());
    out += z.imag() < 0 ? "-" : "+";
    out += fmt_full(std::abs(z.imag()));
    out += "i";
    return out;
}

std::string sweep_csv(const std::vector<ConvergenceRow>& rows, bool with_timing) {
    std::string out = "sweep_value,d_a_to_b,d_b_to_a,d_h,set_cells,elapsed_ms\n";
    for (const auto& r : rows) {
        out += fmt(r.sweep_value);
        out += ',';
        out += fmt(r.d_a_to_b);
        out += ',';
        out += fmt(r.d_b_to_a);
        out += ',';
        out += fmt(r.d_h);
        out += ',';
        out += std::to_string(r.set_cells);
        out += ',';
        out += with_timing ? fmt(r.elapsed_ms) : std::string("0");
        out += '\n';
    }
    return out;
}

namespace {

const char* csv_header = "n,k,re_w,im_w,re_a,im_a,residual,sector_theta_low,sector_theta_high\n";

}

std::string centers_csv(int n, const std::vector<CenterReport>& reports) {
    std::string out = csv_header;
    int k = 0;
    for (const auto& rep : reports) {
        out += std::to_string(n);
        out += ',';
        out += std::to_string(k++);
        out += ',';
        out += fmt_full(rep.v_plus.real());
        out += ',';
        out += fmt_full(rep.v_plus.imag());
        out += ',';
        out += fmt_full(rep.a.real());
        out += ',';
        out += fmt_full(rep.a.imag());
        out += ',';
        out += fmt_full(std::max(rep.residual_plus, rep.residual_minus));
        out += ",0,0\n";
    }
    return out;
}

std::string solutions_csv(int n, const std::vector<SectorSolution>& solutions) {
    std::string out = csv_header;
    for (const auto& s : solutions) {
        out += std::to_string(n);
        out += ',';
        out += std::to_string(s.k ? *s.k : -1);
        out += ',';
        out += fmt_full(s.w.real());
        out += ',';
        out += fmt_full(s.w.imag());
        out += ',';
        out += fmt_full(s.a.real());
        out += ',';
        out += fmt_full(s.a.imag());
        out += ',';
        out += fmt_full(s.residual);
        out += ',';
        out += fmt_full(s.sector.theta_low);
        out += ',';
        out += fmt_full(s.sector.theta_high);
        out += '\n';
    }
    return out;
}

nlohmann::json report_json(const HausdorffReport& rep, const GridSpec& grid,
                           const std::string& subject, const std::string& reference) {
    return nlohmann::json{
        {"d_a_to_b", rep.d_a_to_b},
        {"d_b_to_a", rep.d_b_to_a},
        {"d_h", rep.d_h},
        {"cell_diag", rep.cell_diag},
        {"grid",
         {{"x_min", grid.x_min},
          {"x_max", grid.x_max},
          {"y_min", grid.y_min},
          {"y_max", grid.y_max},
          {"nx", grid.nx},
          {"ny", grid.ny}}},
        {"meta",
         {{"a", subject}, {"b", reference}, {"count_a", rep.count_a}, {"count_b", rep.count_b}}}};
}

SweepConfig sweep_config_from_json(const nlohmann::json& j) {
    SweepConfig cfg;
    cfg.kind = j.value("kind", cfg.kind);
    cfg.family = j.value("family", cfg.family);
    cfg.which_set = j.value("which_set", cfg.which_set);
    cfg.mode = j.value("mode", cfg.mode);
    if (j.contains("c")) cfg.c = parse_complex(j.at("c").get<std::string>());
    if (j.contains("a")) cfg.a = parse_complex(j.at("a").get<std::string>());
    if (j.contains("values")) cfg.values = j.at("values").get<std::vector<double>>();
    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        cfg.grid.x_min = g.value("x_min", cfg.grid.x_min);
        cfg.grid.x_max = g.value("x_max", cfg.grid.x_max);
        cfg.grid.y_min = g.value("y_min", cfg.grid.y_min);
        cfg.grid.y_max = g.value("y_max", cfg.grid.y_max);
        cfg.grid.nx = g.value("nx", cfg.grid.nx);
        cfg.grid.ny = g.value("ny", cfg.grid.ny);
    }
    cfg.radius = j.value("radius", cfg.radius);
    cfg.max_iter = j.value("max_iter", cfg.max_iter);
    cfg.boundary_samples = j.value("boundary_samples", cfg.boundary_samples);
    cfg.out_csv = j.value("out_csv", cfg.out_csv);
    cfg.out_manifest = j.value("out_manifest", cfg.out_manifest);
    cfg.out_raster_dir = j.value("out_raster_dir", cfg.out_raster_dir);
    cfg.timing = j.value("timing", cfg.timing);
    return cfg;
}

nlohmann::json sweep_config_to_json(const SweepConfig& cfg) {
    return nlohmann::json{{"kind", cfg.kind},
                          {"family", cfg.family},
                          {"which_set", cfg.which_set},
                          {"mode", cfg.mode},
                          {"c", format_complex(cfg.c)},
                          {"a", format_complex(cfg.a)},
                          {"values", cfg.values},
                          {"grid",
                           {{"x_min", cfg.grid.x_min},
                            {"x_max", cfg.grid.x_max},
                            {"y_min", cfg.grid.y_min},
                            {"y_max", cfg.grid.y_max},
                            {"nx", cfg.grid.nx},
                            {"ny", cfg.grid.ny}}},
                          {"radius", cfg.radius},
                          {"max_iter", cfg.max_iter},
                          {"boundary_samples", cfg.boundary_samples},
                          {"out_csv", cfg.out_csv},
                          {"out_manifest", cfg.out_manifest},
                          {"out_raster_dir", cfg.out_raster_dir},
                          {"timing", cfg.timing}};
}

void apply_overrides(SweepConfig& cfg, const SweepOverrides& o) {
    if (o.max_iter) cfg.max_iter = *o.max_iter;
    if (o.radius) cfg.radius = *o.radius;
    if (o.out_csv) cfg.out_csv = *o.out_csv;
    if (o.out_manifest) cfg.out_manifest = *o.out_manifest;
    if (o.out_raster_dir) cfg.out_raster_dir = *o.out_raster_dir;
    if (o.timing) cfg.timing = *o.timing;
}

namespace {

std::string value_token(double v) {
    std::string s = fmt(v);
    for (auto& ch : s)
        if (ch == '.') ch = 'p';
    return s;
}

}  // namespace

std::vector<ConvergenceRow> run_sweep(const SweepConfig& cfg) {
    SweepConfig resolved = cfg;
    if (resolved.max_iter == 0)
        resolved.max_iter =
            resolved.kind == "julia" ? julia_max_iter_default : param_max_iter_default;
    if (resolved.values.empty()) throw std::invalid_argument("sweep: values must be nonempty");
    validate(resolved.grid);

    // raster construction raises the radius to the certified bound per value
    const EscapeSpec spec{resolved.radius, resolved.max_iter};

    RasterSink sink;
    if (!resolved.out_raster_dir.empty()) {
        std::filesystem::create_directories(resolved.out_raster_dir);
        sink = [&resolved](double value, const SetRaster& raster) {
            const std::string name = resolved.kind + "_" + resolved.family + "_" +
                                     value_token(value) + ".pgm";
            write_raster_pgm(raster, std::filesystem::path(resolved.out_raster_dir) / name);
        };
    }

    std::vector<ConvergenceRow> rows;
    std::string target_desc;
    if (resolved.kind == "julia") {
        JuliaSweepParams p;
        if (resolved.family.size() != 1)
            throw std::invalid_argument("julia sweep: family must be P, F or R");
        p.family = resolved.family[0];
        p.c = resolved.c;
        p.a = resolved.a;
        p.values = resolved.values;
        p.which = resolved.which_set == "J" ? JuliaSet::J : JuliaSet::K;
        target_desc = describe(julia_target(p));
        rows = julia_convergence_sweep(p, resolved.grid, spec, resolved.boundary_samples, sink);
    } else if (resolved.kind == "mset") {
        MsetSweepParams p;
        if (resolved.family == "P") p.kind = MsetKind::P;
        else if (resolved.family == "F") p.kind = MsetKind::F;
        else if (resolved.family == "R0") p.kind = MsetKind::R0;
        else if (resolved.family == "Rc") p.kind = MsetKind::Rc;
        else throw std::invalid_argument("mset sweep: family must be P, F, R0 or Rc");
        p.c = resolved.c;
        p.values = resolved.values;
        p.mode = resolved.mode == "both" ? ParamMode::Both : ParamMode::One;
        target_desc = describe(mset_target(p));
        rows = mandelbrot_convergence_sweep(p, resolved.grid, spec, resolved.boundary_samples,
                                            sink);
    } else {
        throw std::invalid_argument("sweep: kind must be julia or mset");
    }

    if (!resolved.out_csv.empty())
        write_text_atomic(resolved.out_csv, sweep_csv(rows, resolved.timing));
    if (!resolved.out_manifest.empty()) {
        nlohmann::json manifest = sweep_config_to_json(resolved);
        manifest["target"] = target_desc;
        manifest["cell_diag"] = resolved.grid.cell_diag();
        write_text_atomic(resolved.out_manifest, manifest.dump(2) + "\n");
    }
    return rows;
}

}  // namespace dlimit
