#include "fracwell/report_io.hpp"

#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fracwell {

const std::string& csv_header() {
    static const std::string header =
        "alpha,n,x_tilde,piecewise,direct_tail_re,direct_tail_im,"
        "direct_abel_re,direct_abel_im,contour_total_re,contour_total_im,"
        "contour_residue_re,contour_residue_im,contour_cut_re,contour_cut_im,"
        "delta_direct_tail,delta_direct_abel,delta_contour,err_direct_tail,"
        "err_direct_abel,err_contour,converged_flags,annotations";
    return header;
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, ptr);
}

namespace {

std::string flags_of(const ConsistencyRow& row) {
    auto ch = [](const MethodCell& c) {
        if (!c.present) return '-';
        return c.converged ? '1' : '0';
    };
    return {ch(row.direct_tail), ch(row.direct_abel), ch(row.contour)};
}

void append_cell_columns(std::string& line, const MethodCell& c) {
    if (c.present) {
        line += format_double(c.value.real());
        line += ',';
        line += format_double(c.value.imag());
    } else {
        line += ',';
    }
    line += ',';
}

void append_optional(std::string& line, bool present, double v) {
    if (present) line += format_double(v);
    line += ',';
}

} // namespace

std::string render_csv(const ConsistencyReport& report) {
    std::string out;
    out += "# fracwell ";
    out += report.provenance.tool_version;
    out += " report-schema ";
    out += std::to_string(kReportSchemaVersion);
    out += "\n# config-hash: ";
    out += report.provenance.config_hash;
    out += "\n# timestamp: ";
    out += report.provenance.timestamp;
    out += "\n";
    out += csv_header();
    out += "\n";
    for (const ConsistencyRow& row : report.rows) {
        std::string line;
        line += format_double(row.alpha);
        line += ',';
        line += std::to_string(row.n);
        line += ',';
        line += format_double(row.x_tilde);
        line += ',';
        line += format_double(row.piecewise);
        line += ',';
        append_cell_columns(line, row.direct_tail);
        append_cell_columns(line, row.direct_abel);
        append_cell_columns(line, row.contour);
        if (row.contour.present) {
            line += format_double(row.contour_residue_only.real());
            line += ',';
            line += format_double(row.contour_residue_only.imag());
            line += ',';
            line += format_double(row.contour_cut_only.real());
            line += ',';
            line += format_double(row.contour_cut_only.imag());
            line += ',';
        } else {
            line += ",,,,";
        }
        append_optional(line, row.direct_tail.present, row.delta_direct_tail);
        append_optional(line, row.direct_abel.present, row.delta_direct_abel);
        append_optional(line, row.contour.present, row.delta_contour);
        append_optional(line, row.direct_tail.present,
                        row.direct_tail.abs_error_estimate);
        append_optional(line, row.direct_abel.present,
                        row.direct_abel.abs_error_estimate);
        append_optional(line, row.contour.present,
                        row.contour.abs_error_estimate);
        line += flags_of(row);
        line += ',';
        line += row.annotations;
        out += line;
        out += "\n";
    }
    return out;
}

namespace {

nlohmann::ordered_json row_to_json(const ConsistencyRow& row) {
    nlohmann::ordered_json j;
    j["alpha"] = row.alpha;
    j["n"] = row.n;
    j["x_tilde"] = row.x_tilde;
    j["piecewise"] = row.piecewise;
    auto put = [&j](const char* re, const char* im, const MethodCell& c) {
        if (c.present) {
            j[re] = c.value.real();
            j[im] = c.value.imag();
        } else {
            j[re] = nullptr;
            j[im] = nullptr;
        }
    };
    put("direct_tail_re", "direct_tail_im", row.direct_tail);
    put("direct_abel_re", "direct_abel_im", row.direct_abel);
    put("contour_total_re", "contour_total_im", row.contour);
    if (row.contour.present) {
        j["contour_residue_re"] = row.contour_residue_only.real();
        j["contour_residue_im"] = row.contour_residue_only.imag();
        j["contour_cut_re"] = row.contour_cut_only.real();
        j["contour_cut_im"] = row.contour_cut_only.imag();
    } else {
        j["contour_residue_re"] = nullptr;
        j["contour_residue_im"] = nullptr;
        j["contour_cut_re"] = nullptr;
        j["contour_cut_im"] = nullptr;
    }
    auto put_opt = [&j](const char* key, bool present, double v) {
        if (present)
            j[key] = v;
        else
            j[key] = nullptr;
    };
    put_opt("delta_direct_tail", row.direct_tail.present, row.delta_direct_tail);
    put_opt("delta_direct_abel", row.direct_abel.present, row.delta_direct_abel);
    put_opt("delta_contour", row.contour.present, row.delta_contour);
    put_opt("err_direct_tail", row.direct_tail.present,
            row.direct_tail.abs_error_estimate);
    put_opt("err_direct_abel", row.direct_abel.present,
            row.direct_abel.abs_error_estimate);
    put_opt("err_contour", row.contour.present,
            row.contour.abs_error_estimate);
    j["converged_flags"] = flags_of(row);
    j["annotations"] = row.annotations;
    return j;
}

} // namespace

std::string render_json(const ConsistencyReport& report) {
    nlohmann::ordered_json j;
    j["provenance"] = {{"tool_version", report.provenance.tool_version},
                       {"timestamp", report.provenance.timestamp},
                       {"config_hash", report.provenance.config_hash},
                       {"report_schema", kReportSchemaVersion}};
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const ConsistencyRow& row : report.rows) rows.push_back(row_to_json(row));
    j["rows"] = rows;
    nlohmann::ordered_json per = nlohmann::ordered_json::array();
    for (const auto& [key, st] : report.summary.per_alpha_method) {
        per.push_back({{"alpha", key.first},
                       {"method", key.second},
                       {"max_abs_delta", st.max_abs_delta},
                       {"median_abs_delta", st.median_abs_delta},
                       {"failures", st.failures},
                       {"cells", st.cells}});
    }
    j["summary"] = {{"per_alpha_method", per},
                    {"max_cross_method_disagreement",
                     report.summary.max_cross_method_disagreement},
                    {"total_failures", report.summary.total_failures}};
    return j.dump(2) + "\n";
}

void write_file_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp);
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("rename failed: " + path);
}

namespace {

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            parts.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    if (!cur.empty()) parts.push_back(cur);
    return parts;
}

double parse_number(const std::string& key, const std::string& s) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: bad numeric value for '" + key + "': " + s);
    }
}

} // namespace

ScanConfig parse_scan_config(std::istream& in) {
    ScanConfig cfg;
    cfg.spec = ScanSpec::default_grid();
    double a = 1.0, hbar = 1.0, d_alpha = 1.0, amplitude = 1.0;
    bool normalized_amplitude = false;

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string stripped;
        for (char ch : line) {
            if (ch == '#') break;
            stripped += ch;
        }
        auto first = stripped.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected key = value");
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{}
                                          : s.substr(b, e - b + 1);
        };
        std::string key = trim(stripped.substr(0, eq));
        std::string value = trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": empty key or value");

        if (key == "a") a = parse_number(key, value);
        else if (key == "hbar") hbar = parse_number(key, value);
        else if (key == "d_alpha") d_alpha = parse_number(key, value);
        else if (key == "amplitude") amplitude = parse_number(key, value);
        else if (key == "normalized_amplitude")
            normalized_amplitude = (value == "true" || value == "1");
        else if (key == "alphas") {
            cfg.spec.alphas.clear();
            for (auto& p : split_list(value))
                cfg.spec.alphas.push_back(parse_number(key, p));
        } else if (key == "x_tildes") {
            cfg.spec.x_tildes.clear();
            for (auto& p : split_list(value))
                cfg.spec.x_tildes.push_back(parse_number(key, p));
        } else if (key == "ns") {
            cfg.spec.ns.clear();
            for (auto& p : split_list(value))
                cfg.spec.ns.push_back(static_cast<int>(parse_number(key, p)));
        } else if (key == "methods") {
            cfg.spec.methods.clear();
            for (auto& p : split_list(value)) {
                if (p == "direct-tail") cfg.spec.methods.push_back(Method::DirectTail);
                else if (p == "direct-abel") cfg.spec.methods.push_back(Method::DirectAbel);
                else if (p == "contour") cfg.spec.methods.push_back(Method::Contour);
                else throw ConfigError("config: unknown method '" + p + "'");
            }
        } else if (key == "abs_tol") {
            cfg.spec.tol = ToleranceSpec(parse_number(key, value),
                                         cfg.spec.tol.rel_tol,
                                         cfg.spec.tol.max_evaluations);
        } else if (key == "rel_tol") {
            cfg.spec.tol = ToleranceSpec(cfg.spec.tol.abs_tol,
                                         parse_number(key, value),
                                         cfg.spec.tol.max_evaluations);
        } else if (key == "max_evaluations") {
            cfg.spec.tol = ToleranceSpec(cfg.spec.tol.abs_tol,
                                         cfg.spec.tol.rel_tol,
                                         static_cast<long>(parse_number(key, value)));
        } else if (key == "workers") {
            cfg.spec.workers = static_cast<int>(parse_number(key, value));
        } else if (key == "format") {
            if (value == "csv") cfg.format = OutputFormat::Csv;
            else if (value == "json") cfg.format = OutputFormat::Json;
            else throw ConfigError("config: format must be csv or json");
        } else if (key == "output") {
            cfg.output_path = value;
        } else {
            throw ConfigError("config: unknown key '" + key + "'");
        }
    }

    try {
        WellConfig base(a, hbar, d_alpha, 1.5, amplitude);
        cfg.spec.base = normalized_amplitude
                            ? base.with_normalized_amplitude()
                            : base;
        cfg.spec.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return cfg;
}

ScanConfig load_scan_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file: " + path);
    return parse_scan_config(in);
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(h));
    return buf;
}

std::string iso8601_utc_now() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace fracwell
