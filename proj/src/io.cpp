#include "lptri/io.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace lptri::io {

using nlohmann::json;

std::string format_double(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc{}) throw std::runtime_error("format_double: to_chars failed");
    return {buf, ptr};
}

double parse_double(const std::string& text) {
    double x = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, x);
    if (ec != std::errc{} || ptr != last)
        throw std::invalid_argument("parse_double: bad number '" + text + "'");
    return x;
}

namespace {

double number_from(const json& j, const std::string& where) {
    if (j.is_string()) return parse_double(j.get<std::string>());
    if (j.is_number()) return j.get<double>();
    throw std::invalid_argument(where + ": expected a number or decimal string");
}

std::vector<double> array_from(const json& j, const std::string& where) {
    if (!j.is_array()) throw std::invalid_argument(where + ": expected an array");
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(number_from(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

json to_string_array(const std::vector<double>& xs) {
    json arr = json::array();
    for (double x : xs) arr.push_back(format_double(x));
    return arr;
}

json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(path.string() + ": " + e.what());
    }
    return j;
}

}  // namespace

void atomic_write_text(const std::filesystem::path& path, const std::string& content) {
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open output file: " + tmp);
        out << content;
        if (!out) throw std::runtime_error("write failed: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

PairFile PairFile::from_pair(const PairInput& pair) {
    PairFile pf;
    pf.weights.assign(pair.f.space().weights().begin(), pair.f.space().weights().end());
    pf.f.assign(pair.f.values().begin(), pair.f.values().end());
    pf.g.assign(pair.g.values().begin(), pair.g.values().end());
    pf.p = pair.ctx.p;
    return pf;
}

PairInput PairFile::to_pair() const {
    if (weights.size() != f.size() || weights.size() != g.size())
        throw std::invalid_argument("pair file: weights/f/g length mismatch");
    if (!(p > 1.0)) throw std::invalid_argument("pair file: p must be > 1");
    auto sp = MeasureSpace::create(weights);
    return PairInput::make(WeightedFunction(sp, f), WeightedFunction(sp, g), p);
}

std::vector<WeightedFunction> FamilyFile::to_functions() const {
    auto sp = MeasureSpace::create(weights);
    std::vector<WeightedFunction> out;
    out.reserve(functions.size());
    for (const auto& v : functions) {
        if (v.size() != weights.size())
            throw std::invalid_argument("family file: function/weights length mismatch");
        out.emplace_back(sp, v);
    }
    return out;
}

PairFile read_pair_file(const std::filesystem::path& path) {
    const json j = load_json(path);
    for (const char* key : {"weights", "f", "g", "p"})
        if (!j.contains(key))
            throw std::invalid_argument(path.string() + ": missing field '" + key + "'");
    PairFile pf;
    pf.weights = array_from(j["weights"], "weights");
    pf.f = array_from(j["f"], "f");
    pf.g = array_from(j["g"], "g");
    pf.p = number_from(j["p"], "p");
    return pf;
}

void write_pair_file(const std::filesystem::path& path, const PairFile& pf) {
    json j;
    j["weights"] = to_string_array(pf.weights);
    j["f"] = to_string_array(pf.f);
    j["g"] = to_string_array(pf.g);
    j["p"] = format_double(pf.p);
    atomic_write_text(path, j.dump(2) + "\n");
}

FamilyFile read_family_file(const std::filesystem::path& path) {
    const json j = load_json(path);
    for (const char* key : {"weights", "functions", "p"})
        if (!j.contains(key))
            throw std::invalid_argument(path.string() + ": missing field '" + key + "'");
    FamilyFile ff;
    ff.weights = array_from(j["weights"], "weights");
    if (!j["functions"].is_array())
        throw std::invalid_argument(path.string() + ": 'functions' must be an array of arrays");
    for (std::size_t i = 0; i < j["functions"].size(); ++i)
        ff.functions.push_back(
            array_from(j["functions"][i], "functions[" + std::to_string(i) + "]"));
    ff.p = number_from(j["p"], "p");
    return ff;
}

void write_family_file(const std::filesystem::path& path, const FamilyFile& ff) {
    json j;
    j["weights"] = to_string_array(ff.weights);
    json fns = json::array();
    for (const auto& v : ff.functions) fns.push_back(to_string_array(v));
    j["functions"] = fns;
    j["p"] = format_double(ff.p);
    atomic_write_text(path, j.dump(2) + "\n");
}

const char* const kReportHeader = "id,regime,lhs,rhs,margin,verdict,tier";

std::string to_csv(const std::vector<ReportRow>& rows) {
    std::ostringstream out;
    out << kReportHeader << "\n";
    for (const auto& r : rows) {
        out << r.id << ',' << r.regime << ',' << format_double(r.lhs) << ','
            << format_double(r.rhs) << ',' << format_double(r.margin) << ',' << r.verdict << ','
            << r.tier << "\n";
    }
    return out.str();
}

void write_report_csv(const std::filesystem::path& path, const std::vector<ReportRow>& rows) {
    atomic_write_text(path, to_csv(rows));
}

ReportRow make_row(std::string id, Regime regime, const CheckOutcome& outcome) {
    ReportRow row;
    row.id = std::move(id);
    row.regime = lptri::to_string(regime);
    row.lhs = outcome.lhs;
    row.rhs = outcome.rhs;
    row.margin = outcome.margin;
    row.verdict = lptri::to_string(outcome.verdict);
    row.tier = lptri::to_string(outcome.tier);
    return row;
}

}  // namespace lptri::io
