// SPDX-License-Identifier: Apache-2.0
#include "drx/experiment_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace drx {

namespace {

std::string trim(std::string_view s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string_view::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return std::string(s.substr(begin, end - begin + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& key,
                       const std::string& what) {
    std::string msg = origin;
    if (line > 0) msg += ":" + std::to_string(line);
    if (!key.empty()) msg += ": key '" + key + "'";
    msg += ": " + what;
    throw std::invalid_argument(msg);
}

long parse_long(const std::string& origin, int line, const std::string& key,
                const std::string& value) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        fail(origin, line, key, "expected an integer, got '" + value + "'");
    }
}

double parse_double_value(const std::string& origin, int line, const std::string& key,
                          const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        fail(origin, line, key, "expected a number, got '" + value + "'");
    }
}

void apply(ExperimentConfig& cfg, const std::string& origin, int line,
           const std::string& key, const std::string& value) {
    if (key == "n_t") {
        cfg.n_t = static_cast<int>(parse_long(origin, line, key, value));
    } else if (key == "m") {
        cfg.m = static_cast<int>(parse_long(origin, line, key, value));
    } else if (key == "trials") {
        cfg.trials = static_cast<int>(parse_long(origin, line, key, value));
    } else if (key == "master_seed") {
        cfg.master_seed = static_cast<std::uint64_t>(parse_long(origin, line, key, value));
    } else if (key == "k_list") {
        cfg.k_list.clear();
        for (const std::string& item : split(value, ',')) {
            if (item.empty()) fail(origin, line, key, "empty list entry");
            cfg.k_list.push_back(static_cast<int>(parse_long(origin, line, key, item)));
        }
    } else if (key == "snr_db_list") {
        cfg.snr_db_list.clear();
        for (const std::string& item : split(value, ',')) {
            if (item.empty()) fail(origin, line, key, "empty list entry");
            cfg.snr_db_list.push_back(parse_double_value(origin, line, key, item));
        }
    } else if (key == "receivers") {
        cfg.receivers.clear();
        for (const std::string& item : split(value, ',')) {
            if (item.empty()) fail(origin, line, key, "empty list entry");
            try {
                cfg.receivers.push_back(parse_receiver(item));
            } catch (const std::exception& e) {
                fail(origin, line, key, e.what());
            }
        }
    } else if (key == "sigma_q_mode") {
        if (value == "measured") {
            cfg.sigma_q = {SigmaQMode::Kind::Measured, 0.0};
        } else if (value.rfind("fixed:", 0) == 0 ||
                   (value.rfind("fixed(", 0) == 0 && value.back() == ')')) {
            const std::string num = value.rfind("fixed:", 0) == 0
                                        ? value.substr(6)
                                        : value.substr(6, value.size() - 7);
            cfg.sigma_q = {SigmaQMode::Kind::Fixed,
                           parse_double_value(origin, line, key, num)};
        } else {
            fail(origin, line, key,
                 "expected 'measured' or 'fixed:<value>', got '" + value + "'");
        }
    } else if (key == "zf_lp_soft_objective") {
        const long v = parse_long(origin, line, key, value);
        if (v != 0 && v != 1) fail(origin, line, key, "expected 0 or 1");
        cfg.zf_lp_soft_objective = (v == 1);
    } else {
        fail(origin, line, key, "unknown key");
    }
}

}  // namespace

ReceiverKind parse_receiver(std::string_view name) {
    if (name == "ML") return ReceiverKind::ML;
    if (name == "ZF") return ReceiverKind::ZF;
    if (name == "ZF_LP") return ReceiverKind::ZF_LP;
    throw std::invalid_argument("unknown receiver '" + std::string(name) +
                                "' (expected ML, ZF or ZF_LP)");
}

ExperimentConfig parse_config_text(std::string_view text,
                                   const std::vector<std::string>& overrides,
                                   const std::string& origin) {
    ExperimentConfig cfg;
    bool saw_n_t = false, saw_m = false, saw_k = false, saw_snr = false;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view raw = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                              : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        const std::size_t hash = raw.find('#');
        if (hash != std::string_view::npos) raw = raw.substr(0, hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            fail(origin, line_no, "", "expected 'key = value', got '" + line + "'");
        }
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        if (key.empty()) fail(origin, line_no, "", "empty key");
        apply(cfg, origin, line_no, key, value);
        saw_n_t |= key == "n_t";
        saw_m |= key == "m";
        saw_k |= key == "k_list";
        saw_snr |= key == "snr_db_list";
    }

    for (const std::string& ov : overrides) {
        const std::size_t eq = ov.find('=');
        if (eq == std::string::npos) {
            fail("override", 0, "", "expected key=value, got '" + ov + "'");
        }
        const std::string key = trim(std::string_view(ov).substr(0, eq));
        const std::string value = trim(std::string_view(ov).substr(eq + 1));
        apply(cfg, "override", 0, key, value);
        saw_n_t |= key == "n_t";
        saw_m |= key == "m";
        saw_k |= key == "k_list";
        saw_snr |= key == "snr_db_list";
    }

    if (!saw_n_t) fail(origin, 0, "n_t", "missing required key");
    if (!saw_m) fail(origin, 0, "m", "missing required key");
    if (!saw_k) fail(origin, 0, "k_list", "missing required key");
    if (!saw_snr) fail(origin, 0, "snr_db_list", "missing required key");

    validate(cfg);
    return cfg;
}

ExperimentConfig parse_config(const std::string& path, const std::vector<std::string>& overrides) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::invalid_argument("cannot open config file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), overrides, path);
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 10);
    return std::string(buf, res.ptr);
}

std::string to_csv(const std::vector<MetricRecord>& records) {
    if (records.empty()) {
        throw std::invalid_argument("to_csv: no records");
    }
    std::string out = "snr_db,K,Nt,M,receiver,trials,ser,mse,throughput,seed\n";
    for (const MetricRecord& r : records) {
        out += format_double(r.snr_db);
        out += ',';
        out += std::to_string(r.K);
        out += ',';
        out += std::to_string(r.n_t);
        out += ',';
        out += std::to_string(r.m);
        out += ',';
        out += receiver_name(r.receiver);
        out += ',';
        out += std::to_string(r.trials);
        out += ',';
        out += format_double(r.ser);
        out += ',';
        out += format_double(r.mse);
        out += ',';
        out += format_double(r.throughput);
        out += ',';
        out += std::to_string(r.seed);
        out += '\n';
    }
    return out;
}

void emit_csv(const std::vector<MetricRecord>& records, const std::string& path) {
    const std::string body = to_csv(records);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("emit_csv: cannot open '" + path + "' for writing");
    }
    out << body;
    if (!out) {
        throw std::runtime_error("emit_csv: write failed for '" + path + "'");
    }
}

}  // namespace drx
