#include "qkd/report_io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace qkd {

std::string format_sig(double v, int sig) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", sig, v);
    return buf;
}

double quantize_sig(double v, int sig) {
    return std::strtod(format_sig(v, sig).c_str(), nullptr);
}

nlohmann::ordered_json rate_report_json(const RateReport& r, int sig) {
    nlohmann::ordered_json j;
    j["sifted_len"] = r.sifted_len;
    j["qber"] = quantize_sig(r.qber, sig);
    j["f_factor"] = quantize_sig(r.f_factor, sig);
    j["mu"] = quantize_sig(r.mu, sig);
    j["code_rate"] = quantize_sig(r.code_rate, sig);
    j["h_q"] = quantize_sig(r.h_q, sig);
    j["leak_heuristic"] = quantize_sig(r.leak_heuristic, sig);
    j["leak_padded"] = quantize_sig(r.leak_padded, sig);
    j["parity_bits"] = quantize_sig(r.parity_bits, sig);
    j["h_min"] = quantize_sig(r.h_min, sig);
    j["key_len_n"] = r.key_len_n;
    j["net_bits"] = r.net_bits;
    j["feasible"] = r.feasible;
    return j;
}

nlohmann::ordered_json protocol_report_json(const ProtocolReport& r, int sig) {
    nlohmann::ordered_json j;
    j["config"] = {
        {"raw_len", r.config.raw_len},
        {"qber", quantize_sig(r.config.qber, sig)},
        {"check_fraction", quantize_sig(r.config.check_fraction, sig)},
        {"code", r.config.code.to_string()},
        {"ecc_mode", r.config.ecc_mode == EccMode::padded ? "padded" : "syndrome"},
        {"mu", quantize_sig(r.config.mu, sig)},
        {"seed", r.config.rng_seed},
    };
    j["code_rate"] = quantize_sig(r.code_rate, sig);
    j["measured_qber"] = quantize_sig(r.measured_qber, sig);
    j["correction_ok"] = r.correction_ok;
    j["feasibility_prediction"] = r.feasibility_prediction;
    if (r.mode_warning) j["mode_warning"] = *r.mode_warning;
    j["corrected_len"] = r.corrected_len;
    j["ledger"] = {
        {"sifted_bits", r.ledger.sifted_bits},
        {"check_bits_spent", r.ledger.check_bits_spent},
        {"pad_bits_spent", r.ledger.pad_bits_spent},
        {"key_bits_generated", r.ledger.key_bits_generated},
        {"net_bits", r.ledger.net_bits},
    };
    j["key_fingerprint"] = r.key_fingerprint;
    return j;
}

std::string to_json_line(const nlohmann::ordered_json& j) {
    return j.dump() + "\n";
}

namespace {

void flatten_into(const nlohmann::ordered_json& obj, const std::string& prefix,
                  std::vector<std::pair<std::string, nlohmann::ordered_json>>& out) {
    for (const auto& [key, value] : obj.items()) {
        const std::string name = prefix.empty() ? key : prefix + "." + key;
        if (value.is_object())
            flatten_into(value, name, out);
        else
            out.emplace_back(name, value);
    }
}

std::string csv_cell(const nlohmann::ordered_json& v) {
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string quoted = "\"";
        for (char c : s) {
            if (c == '"') quoted += '"';
            quoted += c;
        }
        return quoted + "\"";
    }
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
}

}  // namespace

std::string to_csv(const nlohmann::ordered_json& j) {
    const bool is_array = j.is_array();
    if (is_array && j.empty()) return "";
    if (!(is_array ? j.front() : j).is_object())
        throw std::invalid_argument("to_csv: expected object rows");

    // Header is the union of keys over all rows, ordered by first
    // appearance; rows missing a key get an empty cell.
    using Cells = std::vector<std::pair<std::string, nlohmann::ordered_json>>;
    std::vector<Cells> rows;
    if (is_array)
        for (const auto& row : j) flatten_into(row, "", rows.emplace_back());
    else
        flatten_into(j, "", rows.emplace_back());

    std::vector<std::string> header;
    for (const auto& row : rows)
        for (const auto& [key, value] : row)
            if (std::find(header.begin(), header.end(), key) == header.end())
                header.push_back(key);

    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += header[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (i) out += ',';
            const auto it = std::find_if(row.begin(), row.end(),
                                         [&](const auto& kv) { return kv.first == header[i]; });
            if (it != row.end()) out += csv_cell(it->second);
        }
        out += '\n';
    }
    return out;
}

}  // namespace qkd
