#pragma once

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "wk/oracle.hpp"
#include "wk/solver.hpp"

namespace wk {

using Json = nlohmann::ordered_json;

inline Json generator_file_json(const KernelResult& result) {
    Json j;
    j["n"] = result.n;
    j["rounds"] = result.rounds_used;
    j["closed"] = result.closed;
    j["generators"] = Json::array();
    for (const GeneratorInfo& g : result.generators) {
        Json e;
        e["name"] = g.name;
        e["provenance"] = g.provenance;
        e["signature"] = {g.sig.deg, g.sig.ord, g.sig.coweight};
        e["polynomial"] = format_poly(g.poly);
        e["term_count"] = g.poly.term_count();
        j["generators"].push_back(std::move(e));
    }
    return j;
}

inline KernelResult load_generator_file_json(const Json& j) {
    KernelResult result;
    result.n = j.at("n").get<int>();
    result.rounds_used = j.at("rounds").get<int>();
    result.closed = j.value("closed", true);
    for (const Json& e : j.at("generators")) {
        GeneratorInfo g;
        g.name = e.at("name").get<std::string>();
        g.provenance = e.at("provenance").get<std::string>();
        const Json& sig = e.at("signature");
        g.sig = Signature{sig.at(0).get<int>(), sig.at(1).get<int>(), sig.at(2).get<int>()};
        g.poly = parse_poly(e.at("polynomial").get<std::string>(), result.n);
        if (g.poly.term_count() != e.at("term_count").get<std::size_t>())
            throw std::runtime_error("generator file term_count mismatch for " + g.name);
        result.generators.push_back(std::move(g));
    }
    return result;
}

inline void write_generator_file(const KernelResult& result, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << generator_file_json(result).dump(2) << "\n";
}

inline KernelResult load_generator_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    Json j = Json::parse(in);
    return load_generator_file_json(j);
}

/// Human-readable generator table: name, signature, term count, provenance.
inline std::string generator_table_text(const KernelResult& result) {
    std::ostringstream os;
    os << "n = " << result.n << ", " << result.generators.size() << " generators, "
       << result.rounds_used << " rounds, " << (result.closed ? "closed" : "NOT closed") << "\n";
    std::size_t name_w = 4, prov_w = 10;
    for (const GeneratorInfo& g : result.generators) {
        name_w = std::max(name_w, g.name.size());
        prov_w = std::max(prov_w, g.provenance.size());
    }
    os << std::left << std::setw(static_cast<int>(name_w) + 2) << "name"
       << std::setw(14) << "signature" << std::setw(8) << "terms"
       << "provenance\n";
    for (const GeneratorInfo& g : result.generators) {
        os << std::left << std::setw(static_cast<int>(name_w) + 2) << g.name
           << std::setw(14) << g.sig.to_string() << std::setw(8) << g.poly.term_count()
           << g.provenance << "\n";
    }
    return os.str();
}

inline std::string cross_check_text(const CrossCheckReport& report) {
    std::ostringstream os;
    os << "oracle cross-check: n = " << report.n << ", deg <= " << report.deg_max << "\n";
    os << "deg  weight  oracle_dim  subalgebra_dim  ok\n";
    for (const CrossCheckEntry& e : report.entries) {
        os << std::left << std::setw(5) << e.deg << std::setw(8) << e.weight << std::setw(12)
           << e.oracle_dim << std::setw(16) << e.subalgebra_dim << (e.ok ? "yes" : "NO") << "\n";
    }
    os << (report.discrepancies == 0 ? "all slices match\n"
                                     : std::to_string(report.discrepancies) + " discrepancies\n");
    return os.str();
}

inline Json cross_check_json(const CrossCheckReport& report) {
    Json j;
    j["n"] = report.n;
    j["deg_max"] = report.deg_max;
    j["discrepancies"] = report.discrepancies;
    j["slices"] = Json::array();
    for (const CrossCheckEntry& e : report.entries) {
        Json s;
        s["deg"] = e.deg;
        s["weight"] = e.weight;
        s["oracle_dim"] = e.oracle_dim;
        s["subalgebra_dim"] = e.subalgebra_dim;
        s["ok"] = e.ok;
        j["slices"].push_back(std::move(s));
    }
    return j;
}

inline std::string verify_report_text(const VerifyReport& report) {
    std::ostringstream os;
    os << "verification: n = " << report.n << "\n";
    os << "name    annihilated  signature  ord=weight  terms\n";
    for (const VerifyEntry& e : report.entries) {
        os << std::left << std::setw(8) << e.name << std::setw(13)
           << (e.annihilated ? "yes" : "NO") << std::setw(11)
           << (e.signature_consistent ? "yes" : "NO") << std::setw(12)
           << (e.order_equals_weight ? "yes" : "NO") << e.term_count << "\n";
    }
    if (report.oracle) os << cross_check_text(*report.oracle);
    os << (report.pass ? "PASS\n" : "FAIL\n");
    return os.str();
}

}  // namespace wk
