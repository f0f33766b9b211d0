#include "netrel/harness/report.hpp"

#include "netrel/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace netrel {

ReportFormat parse_report_format(std::string_view text) {
    if (text == "csv") return ReportFormat::Csv;
    if (text == "json") return ReportFormat::Json;
    if (text == "svg" || text == "svg-plot") return ReportFormat::Svg;
    throw InvalidArgument("unknown report format '" + std::string(text) + "'");
}

PlotAxis parse_plot_axis(std::string_view text) {
    if (text == "side") return PlotAxis::Side;
    if (text == "p") return PlotAxis::Probability;
    if (text == "index") return PlotAxis::Index;
    throw InvalidArgument("unknown plot axis '" + std::string(text) + "'");
}

namespace {

std::string fmt(double v) { return format_number(Number(v)); }

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

std::string quote(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::vector<std::vector<std::string>> split_csv(std::string_view text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false, any = false;
    std::size_t line = 1;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                if (c == '\n') ++line;
                field += c;
            }
            continue;
        }
        any = true;
        if (c == '"') {
            if (!field.empty()) throw ParseError(line, "quote inside unquoted field");
            quoted = true;
        } else if (c == ',') {
            record.push_back(std::move(field));
            field.clear();
        } else if (c == '\r' || c == '\n') {
            if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
            record.push_back(std::move(field));
            field.clear();
            records.push_back(std::move(record));
            record.clear();
            any = false;
            ++line;
        } else {
            field += c;
        }
    }
    if (quoted) throw ParseError(line, "unterminated quoted field");
    if (any) {
        record.push_back(std::move(field));
        records.push_back(std::move(record));
    }
    return records;
}

double parse_double(const std::string& s) {
    const Number n = parse_number(s);
    if (const auto* d = std::get_if<double>(&n)) return *d;
    throw InvalidArgument("expected a decimal, got '" + s + "'");
}

std::optional<double> parse_opt_double(const std::string& s) {
    if (s.empty()) return std::nullopt;
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    return parse_double(s);
}

std::uint64_t parse_u64(const std::string& s) {
    std::uint64_t v = 0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || end != s.data() + s.size())
        throw InvalidArgument("expected an unsigned integer, got '" + s + "'");
    return v;
}

ReportRow row_from_fields(const std::vector<std::string>& f) {
    ReportRow row;
    row.instance = f[0];
    row.method = f[1];
    row.eps = parse_opt_double(f[2]);
    row.delta = parse_opt_double(f[3]);
    row.estimate = parse_number(f[4]);
    if (!f[5].empty()) row.truth = Dyadic::parse(f[5]);
    row.eps_o = parse_opt_double(f[6]);
    row.N = parse_u64(f[7]);
    row.tau_seconds = parse_double(f[8]);
    row.seed = parse_u64(f[9]);
    return row;
}

std::vector<std::string> row_fields(const ReportRow& r) {
    return {r.instance,
            r.method,
            fmt_opt(r.eps),
            fmt_opt(r.delta),
            format_number(r.estimate),
            r.truth ? r.truth->to_string() : std::string(),
            fmt_opt(r.eps_o),
            std::to_string(r.N),
            fmt(r.tau_seconds),
            std::to_string(r.seed)};
}

std::vector<std::string> header_names() {
    std::vector<std::string> names;
    std::stringstream ss{std::string(kCsvHeader)};
    for (std::string name; std::getline(ss, name, ',');) names.push_back(name);
    return names;
}

} // namespace

std::string to_csv(const std::vector<ReportRow>& rows) {
    std::string out(kCsvHeader);
    out += "\r\n";
    for (const ReportRow& r : rows) {
        const auto fields = row_fields(r);
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out += ',';
            out += quote(fields[i]);
        }
        out += "\r\n";
    }
    return out;
}

std::vector<ReportRow> parse_csv(std::string_view text) {
    auto records = split_csv(text);
    if (records.empty()) throw ParseError(1, "empty CSV");
    if (records[0] != header_names()) throw ParseError(1, "unexpected CSV header");
    std::vector<ReportRow> rows;
    for (std::size_t i = 1; i < records.size(); ++i) {
        if (records[i].size() != 10) throw ParseError(i + 1, "expected 10 fields");
        try {
            rows.push_back(row_from_fields(records[i]));
        } catch (const InvalidArgument& e) {
            throw ParseError(i + 1, e.what());
        }
    }
    return rows;
}

std::string to_json(const std::vector<ReportRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const ReportRow& r : rows) {
        auto opt = [](const std::optional<double>& v) -> nlohmann::json {
            if (!v) return nullptr;
            if (!std::isfinite(*v)) return *v > 0 ? "inf" : "-inf";
            return *v;
        };
        nlohmann::json o;
        o["instance"] = r.instance;
        o["method"] = r.method;
        o["eps"] = opt(r.eps);
        o["delta"] = opt(r.delta);
        if (const auto* d = std::get_if<Dyadic>(&r.estimate))
            o["estimate"] = d->to_string();
        else
            o["estimate"] = std::get<double>(r.estimate);
        o["truth"] = r.truth ? nlohmann::json(r.truth->to_string()) : nlohmann::json(nullptr);
        o["eps_o"] = opt(r.eps_o);
        o["N"] = r.N;
        o["tau_seconds"] = r.tau_seconds;
        o["seed"] = r.seed;
        arr.push_back(std::move(o));
    }
    return arr.dump(2) + "\n";
}

std::vector<ReportRow> parse_json(std::string_view text) {
    const auto arr = nlohmann::json::parse(text);
    auto opt = [](const nlohmann::json& v) -> std::optional<double> {
        if (v.is_null()) return std::nullopt;
        if (v.is_string()) return v.get<std::string>() == "inf" ? INFINITY : -INFINITY;
        return v.get<double>();
    };
    std::vector<ReportRow> rows;
    for (const auto& o : arr) {
        ReportRow r;
        r.instance = o.at("instance").get<std::string>();
        r.method = o.at("method").get<std::string>();
        r.eps = opt(o.at("eps"));
        r.delta = opt(o.at("delta"));
        const auto& est = o.at("estimate");
        if (est.is_string())
            r.estimate = Dyadic::parse(est.get<std::string>());
        else
            r.estimate = est.get<double>();
        if (!o.at("truth").is_null()) r.truth = Dyadic::parse(o["truth"].get<std::string>());
        r.eps_o = opt(o.at("eps_o"));
        r.N = o.at("N").get<std::uint64_t>();
        r.tau_seconds = o.at("tau_seconds").get<double>();
        r.seed = o.at("seed").get<std::uint64_t>();
        rows.push_back(std::move(r));
    }
    return rows;
}

double plot_x(const ReportRow& row, std::size_t index, PlotAxis axis) {
    if (axis == PlotAxis::Index || row.instance.rfind("grid:", 0) != 0) return static_cast<double>(index);
    std::vector<std::string> parts;
    std::stringstream ss(row.instance);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() != 4) return static_cast<double>(index);
    try {
        if (axis == PlotAxis::Side) return static_cast<double>(parse_u64(parts[1]));
        return to_double(parse_number(parts[3]));
    } catch (const InvalidArgument&) {
        return static_cast<double>(index);
    }
}

namespace {

struct Point {
    double x, y;
};

std::string render_svg(const std::vector<Point>& pts, const std::string& xlabel, const std::string& ylabel) {
    constexpr double W = 640, H = 400, L = 70, R = 20, T = 20, B = 50;
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (!pts.empty()) {
        auto [xmin, xmax] = std::minmax_element(pts.begin(), pts.end(), [](auto a, auto b) { return a.x < b.x; });
        auto [ymin, ymax] = std::minmax_element(pts.begin(), pts.end(), [](auto a, auto b) { return a.y < b.y; });
        x0 = xmin->x, x1 = xmax->x, y0 = ymin->y, y1 = ymax->y;
        if (x0 == x1) x0 -= 0.5, x1 += 0.5;
        if (y0 == y1) y0 -= 0.5, y1 += 0.5;
    }
    auto sx = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
    auto sy = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };

    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
      << "\" stroke=\"black\"/>\n";
    s << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
    for (double v : {y0, y1})
        s << "<text x=\"" << L - 5 << "\" y=\"" << sy(v) << "\" text-anchor=\"end\" font-size=\"11\">" << fmt(v)
          << "</text>\n";
    for (double v : {x0, x1})
        s << "<text x=\"" << sx(v) << "\" y=\"" << H - B + 15 << "\" text-anchor=\"middle\" font-size=\"11\">"
          << fmt(v) << "</text>\n";
    s << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 10 << "\" text-anchor=\"middle\">" << xlabel
      << "</text>\n";
    s << "<text x=\"15\" y=\"" << (T + H - B) / 2 << "\" transform=\"rotate(-90 15 " << (T + H - B) / 2
      << ")\" text-anchor=\"middle\">" << ylabel << "</text>\n";
    for (const Point& p : pts)
        s << "<circle class=\"point\" cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y) << "\" r=\"3\" fill=\"steelblue\"/>\n";
    s << "</svg>\n";
    return s.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << content;
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::string_view axis_label(PlotAxis axis) {
    switch (axis) {
    case PlotAxis::Side: return "grid side";
    case PlotAxis::Probability: return "p";
    case PlotAxis::Index: return "row";
    }
    return "";
}

} // namespace

std::vector<std::filesystem::path> write_plots(const std::vector<ReportRow>& rows, PlotAxis axis,
                                               const std::filesystem::path& stem) {
    if (rows.empty()) throw InvalidArgument("no rows to plot");
    std::vector<Point> err, tau;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double x = plot_x(rows[i], i, axis);
        if (rows[i].eps_o && std::isfinite(*rows[i].eps_o)) err.push_back({x, *rows[i].eps_o});
        tau.push_back({x, rows[i].tau_seconds});
    }
    const std::string xlabel(axis_label(axis));
    std::filesystem::path err_path = stem, tau_path = stem;
    err_path += "_eps_o.svg";
    tau_path += "_tau.svg";
    write_file(err_path, render_svg(err, xlabel, "eps_o"));
    write_file(tau_path, render_svg(tau, xlabel, "tau (s)"));
    return {err_path, tau_path};
}

void write_report(const std::vector<ReportRow>& rows, ReportFormat format, const std::filesystem::path& path) {
    if (rows.empty()) throw InvalidArgument("no rows to report");
    switch (format) {
    case ReportFormat::Csv: write_file(path, to_csv(rows)); break;
    case ReportFormat::Json: write_file(path, to_json(rows)); break;
    case ReportFormat::Svg: {
        const bool grids = std::all_of(rows.begin(), rows.end(),
                                       [](const ReportRow& r) { return r.instance.rfind("grid:", 0) == 0; });
        write_plots(rows, grids ? PlotAxis::Side : PlotAxis::Index, path);
        break;
    }
    }
}

} // namespace netrel
