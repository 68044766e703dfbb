#include "io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include <json.hpp>

namespace lncat::cli {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

InputTable read_input_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open input file: " + path);

    InputTable table;
    std::map<std::string, std::size_t> index;
    std::string line;
    int lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw InvalidInput("line " + std::to_string(lineno) + ": expected 'group,value'");
        }
        const std::string first = trim(line.substr(0, comma));
        const std::string second = trim(line.substr(comma + 1));
        if (!header_seen) {
            if (first != "group" || second != "value") {
                throw InvalidInput("line " + std::to_string(lineno) +
                                   ": header must be 'group,value'");
            }
            header_seen = true;
            continue;
        }
        if (first.empty()) {
            throw InvalidInput("line " + std::to_string(lineno) + ": empty group label");
        }
        if (second.find(',') != std::string::npos) {
            throw InvalidInput("line " + std::to_string(lineno) + ": too many columns");
        }
        double value = 0.0;
        try {
            std::size_t used = 0;
            value = std::stod(second, &used);
            if (used != second.size()) throw std::invalid_argument(second);
        } catch (const std::exception&) {
            throw InvalidInput("line " + std::to_string(lineno) + ": cannot parse value '" +
                               second + "'");
        }
        if (!(value > 0.0) || !std::isfinite(value)) {
            throw InvalidInput("line " + std::to_string(lineno) +
                               ": observations must be finite and positive, got " + second);
        }
        auto [it, inserted] = index.try_emplace(first, table.groups.size());
        if (inserted) table.groups.emplace_back(first, std::vector<double>{});
        table.groups[it->second].second.push_back(value);
    }
    if (!header_seen) throw InvalidInput("empty input: missing 'group,value' header");
    if (table.groups.size() < 2) {
        throw InvalidInput("need at least 2 distinct groups, got " +
                           std::to_string(table.groups.size()));
    }
    for (const auto& [label, values] : table.groups) {
        if (values.size() < 2) {
            throw InvalidInput("group '" + label + "' needs at least 2 rows, got " +
                               std::to_string(values.size()));
        }
    }
    return table;
}

std::vector<GroupSample> to_samples(const InputTable& table) {
    std::vector<GroupSample> samples;
    samples.reserve(table.groups.size());
    for (const auto& [label, values] : table.groups) {
        samples.push_back(make_group_sample(values));
    }
    return samples;
}

Scenario read_scenario_json(const std::string& path, bool* seed_generated) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open scenario file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput("scenario JSON parse error: " + std::string(e.what()));
    }

    Scenario scenario;
    try {
        scenario.id = doc.value("id", std::string("scenario"));
        scenario.k = doc.at("k").get<int>();
        scenario.ns = doc.at("ns").get<std::vector<int>>();
        scenario.mus = doc.at("mus").get<std::vector<double>>();
        scenario.sigma2s = doc.at("sigma2s").get<std::vector<double>>();
        scenario.alpha = doc.value("alpha", 0.05);
        scenario.reps = doc.value("reps", 2000);
        scenario.m = doc.value("m", 1000);
        if (doc.contains("methods")) {
            for (const auto& name : doc.at("methods")) {
                scenario.methods.push_back(method_from_name(name.get<std::string>()));
            }
        } else {
            scenario.methods = {Method::cat, Method::lrt};
        }
        if (doc.contains("seed")) {
            scenario.seed = doc.at("seed").get<std::uint64_t>();
            if (seed_generated) *seed_generated = false;
        } else {
            std::random_device rd;
            scenario.seed =
                (static_cast<std::uint64_t>(rd()) << 32) ^ static_cast<std::uint64_t>(rd());
            if (seed_generated) *seed_generated = true;
        }
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput("scenario JSON: " + std::string(e.what()));
    }
    return scenario;
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default: out += c;
        }
    }
    return out;
}

std::string groups_json(const InputTable& table, const std::vector<GroupEstimate>& estimates) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < table.groups.size(); ++i) {
        const auto& [label, values] = table.groups[i];
        const GroupEstimate& est = estimates[i];
        if (i > 0) os << ",";
        os << "{\"label\":\"" << json_escape(label) << "\""
           << ",\"n\":" << values.size()
           << ",\"ybar\":" << format_double(est.mu_hat)
           << ",\"s2\":" << format_double(est.sigma2_hat)
           << ",\"eta_hat\":" << format_double(est.eta_hat)
           << ",\"v_hat\":" << format_double(est.v_hat) << "}";
    }
    os << "]";
    return os.str();
}

}  // namespace

std::string test_report_json(const InputTable& table, const std::vector<GroupEstimate>& estimates,
                             const TestResult& result) {
    std::ostringstream os;
    os << "{\"method\":\"" << method_name(result.method) << "\""
       << ",\"alpha\":" << format_double(result.alpha)
       << ",\"groups\":" << groups_json(table, estimates)
       << ",\"statistic\":" << format_double(result.statistic)
       << ",\"p_value\":" << format_double(result.p_value);
    if (result.critical_value) {
        os << ",\"critical_value\":" << format_double(*result.critical_value);
    }
    if (result.m) os << ",\"replicates\":" << *result.m;
    if (result.seed) os << ",\"seed\":" << *result.seed;
    os << ",\"reject\":" << (result.reject ? "true" : "false") << "}\n";
    return os.str();
}

namespace {

std::string brief(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

}  // namespace

std::string test_report_text(const InputTable& table, const std::vector<GroupEstimate>& estimates,
                             const TestResult& result) {
    std::ostringstream os;
    os << "method: " << method_name(result.method) << "\n";
    os << "group          n        ybar          s2     eta_hat       v_hat\n";
    for (std::size_t i = 0; i < table.groups.size(); ++i) {
        const auto& [label, values] = table.groups[i];
        const GroupEstimate& est = estimates[i];
        char row[160];
        std::snprintf(row, sizeof row, "%-12s %3zu %11.6f %11.6f %11.6f %11.6f\n", label.c_str(),
                      values.size(), est.mu_hat, est.sigma2_hat, est.eta_hat, est.v_hat);
        os << row;
    }
    os << "statistic: " << brief(result.statistic) << "\n";
    os << "p_value:   " << brief(result.p_value) << "\n";
    if (result.critical_value) {
        os << "critical_value(alpha=" << brief(result.alpha)
           << "): " << brief(*result.critical_value) << "\n";
    }
    if (result.m) os << "replicates: " << *result.m << "\n";
    if (result.seed) os << "seed: " << *result.seed << "\n";
    os << "decision: " << (result.reject ? "reject" : "fail to reject")
       << " H0 at alpha=" << brief(result.alpha) << "\n";
    return os.str();
}

namespace {

std::string ns_joined(const std::vector<int>& ns) {
    std::ostringstream os;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        if (i > 0) os << ";";
        os << ns[i];
    }
    return os.str();
}

}  // namespace

std::string study_report_json(const StudyResult& study) {
    const Scenario& sc = study.scenario;
    std::ostringstream os;
    os << "{\"scenario_id\":\"" << json_escape(sc.id) << "\""
       << ",\"k\":" << sc.k << ",\"ns\":[";
    for (std::size_t i = 0; i < sc.ns.size(); ++i) os << (i ? "," : "") << sc.ns[i];
    os << "],\"mus\":[";
    for (std::size_t i = 0; i < sc.mus.size(); ++i)
        os << (i ? "," : "") << format_double(sc.mus[i]);
    os << "],\"sigma2s\":[";
    for (std::size_t i = 0; i < sc.sigma2s.size(); ++i)
        os << (i ? "," : "") << format_double(sc.sigma2s[i]);
    os << "],\"alpha\":" << format_double(sc.alpha) << ",\"reps\":" << sc.reps
       << ",\"m\":" << sc.m << ",\"seed\":" << sc.seed
       << ",\"is_null\":" << (study.is_null ? "true" : "false") << ",\"methods\":[";
    for (std::size_t i = 0; i < study.methods.size(); ++i) {
        const MethodStudy& ms = study.methods[i];
        if (i > 0) os << ",";
        os << "{\"method\":\"" << method_name(ms.method) << "\""
           << ",\"rejection_rate\":" << format_double(ms.rejection_rate)
           << ",\"mc_std_error\":" << format_double(ms.mc_std_error)
           << ",\"mean_p_value\":" << format_double(ms.mean_p_value)
           << ",\"failures\":" << ms.failures
           << ",\"wall_time_s\":" << format_double(ms.wall_time_s) << "}";
    }
    os << "]}\n";
    return os.str();
}

std::string study_report_text(const StudyResult& study) {
    const Scenario& sc = study.scenario;
    std::ostringstream os;
    os << "scenario " << sc.id << ": k=" << sc.k << " ns=" << ns_joined(sc.ns)
       << " alpha=" << brief(sc.alpha) << " reps=" << sc.reps << " m=" << sc.m
       << " seed=" << sc.seed << (study.is_null ? " (null scenario)" : "") << "\n";
    os << "method  rejection_rate  mc_std_error  mean_p_value  failures  wall_time_s\n";
    for (const MethodStudy& ms : study.methods) {
        char row[160];
        std::snprintf(row, sizeof row, "%-6s  %14.4f  %12.4f  %12.4f  %8d  %11.2f\n",
                      method_name(ms.method).c_str(), ms.rejection_rate, ms.mc_std_error,
                      ms.mean_p_value, ms.failures, ms.wall_time_s);
        os << row;
    }
    return os.str();
}

std::string study_csv(const StudyResult& study) {
    const Scenario& sc = study.scenario;
    std::ostringstream os;
    os << "scenario_id,method,k,ns,alpha,reps,m,seed,is_null,rejection_rate,mc_std_error,"
          "mean_p_value,failures,wall_time_s\n";
    for (const MethodStudy& ms : study.methods) {
        os << sc.id << "," << method_name(ms.method) << "," << sc.k << "," << ns_joined(sc.ns)
           << "," << format_double(sc.alpha) << "," << sc.reps << "," << sc.m << "," << sc.seed
           << "," << (study.is_null ? "true" : "false") << ","
           << format_double(ms.rejection_rate) << "," << format_double(ms.mc_std_error) << ","
           << format_double(ms.mean_p_value) << "," << ms.failures << ","
           << format_double(ms.wall_time_s) << "\n";
    }
    return os.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path dir = target.has_parent_path() ? target.parent_path() : fs::path(".");
    if (!fs::exists(dir)) {
        throw InvalidInput("output directory does not exist: " + dir.string());
    }
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InvalidInput("cannot write to " + tmp.string());
        out << content;
        out.flush();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw InvalidInput("write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw InvalidInput("cannot rename temporary file onto " + path);
    }
}

}  // namespace lncat::cli
