#include "ampm/cli.hpp"

#include "ampm/error.hpp"
#include "ampm/filter.hpp"
#include "ampm/format.hpp"
#include "ampm/oracle.hpp"
#include "ampm/scatter.hpp"
#include "ampm/sweep.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <variant>

namespace ampm::cli {

namespace {

using Json = nlohmann::ordered_json;

enum class OutputFormat { Table, Csv, Json };

const std::map<std::string, OutputFormat> kFormatNames{
    {"table", OutputFormat::Table},
    {"csv", OutputFormat::Csv},
    {"json", OutputFormat::Json},
};

using Value = std::variant<std::monostate, double, std::string, bool>;
using Field = std::pair<std::string, Value>;
using Record = std::vector<Field>;

struct Rendered {
    std::vector<std::string> columns;
    std::vector<Record> rows;
};

std::string cell_text(const Value& v) {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return "";
            } else if constexpr (std::is_same_v<T, double>) {
                return format_number(x);
            } else if constexpr (std::is_same_v<T, bool>) {
                return x ? "true" : "false";
            } else {
                return x;
            }
        },
        v);
}

Json json_value(const Value& v) {
    return std::visit(
        [](const auto& x) -> Json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return nullptr;
            } else if constexpr (std::is_same_v<T, double>) {
                if (std::isnan(x)) {
                    return nullptr;
                }
                if (std::isinf(x)) {
                    return format_number(x);
                }
                // Same digits the text formats print.
                return std::stod(format_number(x));
            } else {
                return x;
            }
        },
        v);
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

void write_csv(std::ostream& out, const std::vector<std::string>& columns, const std::vector<Record>& rows) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        out << (i ? "," : "") << csv_escape(columns[i]);
    }
    out << '\n';
    for (const Record& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << csv_escape(cell_text(row[i].second));
        }
        out << '\n';
    }
}

void write_table_rows(std::ostream& out, const std::vector<std::string>& columns,
                      const std::vector<Record>& rows, bool color) {
    std::vector<std::size_t> widths(columns.size());
    for (std::size_t i = 0; i < columns.size(); ++i) {
        widths[i] = columns[i].size();
        for (const Record& row : rows) {
            widths[i] = std::max(widths[i], cell_text(row[i].second).size());
        }
    }
    const auto pad = [](const std::string& s, std::size_t w) { return s + std::string(w - s.size(), ' '); };
    if (color) {
        out << "\x1b[1m";
    }
    const std::size_t last = columns.size() - 1;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        out << (i ? "  " : "") << (i == last ? columns[i] : pad(columns[i], widths[i]));
    }
    if (color) {
        out << "\x1b[0m";
    }
    out << '\n';
    for (const Record& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            const std::string cell = cell_text(row[i].second);
            out << (i ? "  " : "") << (i == last ? cell : pad(cell, widths[i]));
        }
        out << '\n';
    }
}

void write_table_record(std::ostream& out, const Record& record, bool color) {
    std::size_t width = 0;
    for (const auto& [key, _] : record) {
        width = std::max(width, key.size());
    }
    for (const auto& [key, value] : record) {
        if (color) {
            out << "\x1b[1m" << key << "\x1b[0m";
        } else {
            out << key;
        }
        out << std::string(width - key.size() + 2, ' ') << cell_text(value) << '\n';
    }
}

Json record_json(const Record& record) {
    Json obj = Json::object();
    for (const auto& [key, value] : record) {
        obj[key] = json_value(value);
    }
    return obj;
}

void emit_record(std::ostream& out, OutputFormat format, const Json& meta, const Record& record, bool color) {
    switch (format) {
    case OutputFormat::Table:
        write_table_record(out, record, color);
        break;
    case OutputFormat::Csv: {
        std::vector<std::string> columns;
        for (const auto& [key, _] : record) {
            columns.push_back(key);
        }
        write_csv(out, columns, {record});
        break;
    }
    case OutputFormat::Json: {
        Json doc = Json::object();
        doc["meta"] = meta;
        doc["result"] = record_json(record);
        out << doc.dump(2) << '\n';
        break;
    }
    }
}

void emit_rows(std::ostream& out, OutputFormat format, const Json& meta, const Rendered& table, bool color) {
    switch (format) {
    case OutputFormat::Table:
        write_table_rows(out, table.columns, table.rows, color);
        break;
    case OutputFormat::Csv:
        write_csv(out, table.columns, table.rows);
        break;
    case OutputFormat::Json: {
        Json doc = Json::object();
        doc["meta"] = meta;
        Json rows = Json::array();
        for (const Record& row : table.rows) {
            rows.push_back(record_json(row));
        }
        doc["rows"] = std::move(rows);
        out << doc.dump(2) << '\n';
        break;
    }
    }
}

const std::vector<std::string> kSweepColumns{
    "fm_hz", "hc_mag", "hc_phase_deg", "hd_mag", "hd_phase_deg",
    "am_am_db", "am_pm_db", "carrier_gain_db", "status",
};

Record sweep_record(const SweepRow& row) {
    const auto num = [&row](double v) -> Value {
        if (!row.ok()) {
            return std::monostate{};
        }
        return v;
    };
    return {
        {"fm_hz", row.fm_hz},
        {"hc_mag", num(row.hc_mag)},
        {"hc_phase_deg", num(row.hc_phase_deg)},
        {"hd_mag", num(row.hd_mag)},
        {"hd_phase_deg", num(row.hd_phase_deg)},
        {"am_am_db", num(row.am_am_db)},
        {"am_pm_db", num(row.am_pm_db)},
        {"carrier_gain_db", num(row.carrier_gain_db)},
        {"status", row.status},
    };
}

double phase_deg(Complex z) { return std::arg(z) * 180.0 / std::numbers::pi; }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InvalidParameter("cannot open filter file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct FilterSource {
    std::string path;
    std::string proto;

    void add_to(CLI::App& cmd) {
        cmd.add_option("--filter", path, "Filter-spec file");
        cmd.add_option("--proto", proto, "Inline prototype, e.g. onepole_lp:10e6");
    }

    TransferFunction load(std::ostream& err) const {
        if (path.empty() == proto.empty()) {
            throw InvalidParameter("exactly one of --filter or --proto is required");
        }
        TransferFunction tf = path.empty() ? prototype_from_descriptor(proto) : parse_filter_spec(read_file(path));
        if (!tf.label()) {
            tf = tf.with_label(path.empty() ? proto : path);
        }
        for (const std::string& w : lint(tf)) {
            err << "warning: " << w << '\n';
        }
        return tf;
    }
};

Json meta_for(const TransferFunction* tf, double fc_hz) {
    Json meta = Json::object();
    if (tf != nullptr) {
        meta["filter"] = tf->label().value_or("");
    }
    meta["fc_hz"] = json_value(fc_hz);
    meta["version"] = kVersion;
    return meta;
}

struct FrequencyArgs {
    double fc = 0.0;
    double fm = 0.0;
};

int exit_code_for(const Error& e) {
    switch (e.kind()) {
    case ErrorKind::SingularEvaluation:
    case ErrorKind::DegenerateCarrier:
        return kNumeric;
    case ErrorKind::Parse:
    case ErrorKind::InvalidParameter:
        return kUsage;
    }
    return kUsage;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Environment& env) {
    CLI::App app{"Quantify AM/PM cross-conversion of a modulated carrier through a linear filter", "ampm"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    std::string format_name = "table";
    const auto add_format = [&format_name](CLI::App& cmd) {
        cmd.add_option("--format", format_name, "table, csv or json")
            ->check(CLI::IsMember({"table", "csv", "json"}));
    };

    // analyze
    CLI::App* analyze = app.add_subcommand("analyze", "Common/differential response at one (fc, fm)");
    FilterSource analyze_src;
    FrequencyArgs analyze_freq;
    analyze_src.add_to(*analyze);
    analyze->add_option("--fc", analyze_freq.fc, "Carrier frequency [Hz]")->required();
    analyze->add_option("--fm", analyze_freq.fm, "Modulation frequency [Hz]")->required();
    add_format(*analyze);

    // sweep
    CLI::App* sweep = app.add_subcommand("sweep", "Scatter figures over a grid of modulation frequencies");
    FilterSource sweep_src;
    double sweep_fc = 0.0;
    double fm_start = 0.0;
    double fm_stop = 0.0;
    std::size_t points = 0;
    bool log_spacing = false;
    std::string out_path;
    sweep_src.add_to(*sweep);
    sweep->add_option("--fc", sweep_fc, "Carrier frequency [Hz]")->required();
    sweep->add_option("--fm-start", fm_start, "First modulation frequency [Hz]")->required();
    sweep->add_option("--fm-stop", fm_stop, "Last modulation frequency [Hz]")->required();
    sweep->add_option("--points", points, "Grid points (>= 2)")->required();
    sweep->add_flag("--log", log_spacing, "Geometric spacing (default linear)");
    sweep->add_option("--out", out_path, "Write to this file instead of stdout");
    add_format(*sweep);

    // verify
    CLI::App* verify = app.add_subcommand("verify", "Check the analytic prediction against a time-domain measurement");
    FilterSource verify_src;
    FrequencyArgs verify_freq;
    double am_index = 0.0;
    double pm_index = 0.0;
    double tolerance = 1e-4;
    bool force = false;
    verify_src.add_to(*verify);
    verify->add_option("--fc", verify_freq.fc, "Carrier frequency [Hz]")->required();
    verify->add_option("--fm", verify_freq.fm, "Modulation frequency [Hz]")->required();
    verify->add_option("--am-index", am_index, "Input AM index a");
    verify->add_option("--pm-index", pm_index, "Input PM index p [rad]");
    verify->add_option("--tolerance", tolerance, "Pass threshold on max relative error");
    verify->add_flag("--force", force, "Allow indices above 0.01");
    add_format(*verify);

    // rule-of-thumb
    CLI::App* rule = app.add_subcommand("rule-of-thumb", "Bandwidth ratio k = f0/fc for a required AM->PM isolation");
    FrequencyArgs rule_freq;
    double isolation_db = 0.0;
    rule->add_option("--fc", rule_freq.fc, "Carrier frequency [Hz]")->required();
    rule->add_option("--fm", rule_freq.fm, "Modulation frequency [Hz]")->required();
    rule->add_option("--isolation-db", isolation_db, "Required suppression [dB, positive]")->required();
    add_format(*rule);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream help_out;
        std::ostringstream diag;
        const int code = app.exit(e, help_out, diag);
        if (code == 0) {
            out << help_out.str();
            return kOk;
        }
        err << diag.str();
        return kUsage;
    }

    const OutputFormat format = kFormatNames.at(format_name);

    try {
        if (analyze->parsed()) {
            const TransferFunction tf = analyze_src.load(err);
            const ScatterResult r = compute_scatter(tf, Frequency(analyze_freq.fc), Frequency(analyze_freq.fm));
            Json meta = meta_for(&tf, analyze_freq.fc);
            meta["fm_hz"] = json_value(analyze_freq.fm);
            Record rec = sweep_record(SweepRow::from_scatter(r));
            rec.pop_back(); // status is always ok here
            rec.emplace_back("carrier_gain_mag", std::abs(r.carrier_gain));
            rec.emplace_back("carrier_gain_phase_deg", phase_deg(r.carrier_gain));
            emit_record(out, format, meta, rec, env.color);
            return kOk;
        }

        if (sweep->parsed()) {
            const TransferFunction tf = sweep_src.load(err);
            const SweepSpec spec{
                .tf = tf,
                .fc = Frequency(sweep_fc),
                .fm_start = Frequency(fm_start),
                .fm_stop = Frequency(fm_stop),
                .points = points,
                .spacing = log_spacing ? Spacing::Logarithmic : Spacing::Linear,
            };
            const std::vector<SweepRow> rows = run_sweep(spec);
            Rendered table{kSweepColumns, {}};
            for (const SweepRow& row : rows) {
                if (!row.ok()) {
                    err << "warning: fm = " << format_number(row.fm_hz) << " Hz: " << row.message << '\n';
                }
                table.rows.push_back(sweep_record(row));
            }
            const Json meta = meta_for(&tf, sweep_fc);
            if (out_path.empty()) {
                emit_rows(out, format, meta, table, env.color);
            } else {
                std::ofstream file(out_path, std::ios::binary);
                if (!file) {
                    throw InvalidParameter("cannot write '" + out_path + "'");
                }
                emit_rows(file, format, meta, table, false);
            }
            return kOk;
        }

        if (verify->parsed()) {
            if (!force && (std::abs(am_index) > 0.01 || std::abs(pm_index) > 0.01)) {
                throw InvalidParameter("indices above 0.01 exceed the verification regime; pass --force to override");
            }
            if (!(tolerance >= 0.0)) {
                throw InvalidParameter("tolerance must be >= 0");
            }
            const TransferFunction tf = verify_src.load(err);
            const oracle::VerifyReport rep =
                oracle::verify(tf, Frequency(verify_freq.fc), Frequency(verify_freq.fm), am_index, pm_index);
            const bool pass = rep.max_rel_err <= tolerance;
            Json meta = meta_for(&tf, verify_freq.fc);
            meta["fm_hz"] = json_value(verify_freq.fm);
            const Record rec{
                {"analytic_a_re", rep.analytic.am_index.real()},
                {"analytic_a_im", rep.analytic.am_index.imag()},
                {"analytic_p_re", rep.analytic.pm_index.real()},
                {"analytic_p_im", rep.analytic.pm_index.imag()},
                {"analytic_carrier_re", rep.analytic.amplitude.real()},
                {"analytic_carrier_im", rep.analytic.amplitude.imag()},
                {"measured_a_re", rep.measured.am_index.real()},
                {"measured_a_im", rep.measured.am_index.imag()},
                {"measured_p_re", rep.measured.pm_index.real()},
                {"measured_p_im", rep.measured.pm_index.imag()},
                {"measured_carrier_re", rep.measured.carrier.real()},
                {"measured_carrier_im", rep.measured.carrier.imag()},
                {"residual", rep.measured.residual},
                {"n_samples", static_cast<double>(rep.waveform.n_samples)},
                {"sample_rate_hz", rep.waveform.sample_rate},
                {"max_rel_err", rep.max_rel_err},
                {"tolerance", tolerance},
                {"pass", pass},
            };
            emit_record(out, format, meta, rec, env.color);
            if (!pass) {
                err << "verification failed: max_rel_err " << format_number(rep.max_rel_err) << " > tolerance "
                    << format_number(tolerance) << '\n';
                return kVerificationFailed;
            }
            return kOk;
        }

        if (rule->parsed()) {
            const RuleOfThumbResult r = min_bandwidth_ratio(
                RuleOfThumbQuery{Frequency(rule_freq.fm), Frequency(rule_freq.fc), isolation_db});
            Json meta = meta_for(nullptr, rule_freq.fc);
            meta["fm_hz"] = json_value(rule_freq.fm);
            const Record rec{
                {"k", r.k},
                {"f0_hz", r.f0.hz()},
                {"isolation_db", isolation_db},
                {"predicted_db", r.predicted_db},
                {"outside_approximation", r.outside_approximation},
            };
            if (r.outside_approximation) {
                err << "warning: k <= 1; the fm/(k fc) approximation assumes f0 above fc\n";
            }
            emit_record(out, format, meta, rec, env.color);
            return kOk;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
    return kUsage;
}

} // namespace ampm::cli
