#include "riflab/io.hpp"

#include <charconv>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "riflab/errors.hpp"

namespace riflab::io {

namespace {

using nlohmann::json;

json must_parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        fail(ErrorKind::ParseError, "malformed JSON document");
    return j;
}

int get_int(const json& j, const char* key, int lo, int hi) {
    if (!j.contains(key) || !j[key].is_number_integer())
        fail(ErrorKind::ParseError, std::string("missing integer '") + key +
                                        "'");
    int v = j[key].get<int>();
    if (v < lo || v > hi)
        fail(ErrorKind::ParseError, std::string("'") + key +
                                        "' outside [" + std::to_string(lo) +
                                        ", " + std::to_string(hi) + "]");
    return v;
}

double get_num(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number())
        fail(ErrorKind::ParseError, std::string("'") + key +
                                        "' is not a number");
    return j[key].get<double>();
}

Poly2 poly_from_json(const json& j) {
    if (!j.is_object() || !j.contains("bidegree") || !j.contains("coeffs"))
        fail(ErrorKind::ParseError,
             "polynomial needs 'bidegree' and 'coeffs'");
    const json& bd = j["bidegree"];
    if (!bd.is_array() || bd.size() != 2 || !bd[0].is_number_integer() ||
        !bd[1].is_number_integer())
        fail(ErrorKind::ParseError, "'bidegree' must be two integers");
    int n = bd[0].get<int>(), m = bd[1].get<int>();
    if (n < 0 || m < 0 || n > 64 || m > 64)
        fail(ErrorKind::ParseError, "bidegree outside [0, 64]");
    Poly2 p(n, m);
    if (!j["coeffs"].is_array())
        fail(ErrorKind::ParseError, "'coeffs' must be an array");
    std::set<std::pair<int, int>> seen;
    for (const json& e : j["coeffs"]) {
        if (!e.is_object())
            fail(ErrorKind::ParseError, "coefficient entry must be an object");
        int i = get_int(e, "i", 0, n);
        int jj = get_int(e, "j", 0, m);
        if (!seen.insert({i, jj}).second)
            fail(ErrorKind::ParseError,
                 "duplicate coefficient (" + std::to_string(i) + ", " +
                     std::to_string(jj) + ")");
        p.at(i, jj) = cd(get_num(e, "re", 0.0), get_num(e, "im", 0.0));
    }
    return p;
}

json poly_to_json(const Poly2& p) {
    json coeffs = json::array();
    for (int i = 0; i <= p.deg1(); ++i)
        for (int j = 0; j <= p.deg2(); ++j) {
            cd c = p.at(i, j);
            if (c == cd(0.0, 0.0)) continue;
            json e;
            e["i"] = i;
            e["j"] = j;
            e["re"] = c.real();
            if (c.imag() != 0.0) e["im"] = c.imag();
            coeffs.push_back(e);
        }
    json out;
    out["bidegree"] = {p.deg1(), p.deg2()};
    out["coeffs"] = coeffs;
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::ParseError, "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::ParseError, "cannot write " + path.string());
    out << text;
}

} // namespace

Poly2 parse_poly(const std::string& text) {
    return poly_from_json(must_parse(text));
}

std::string serialize_poly(const Poly2& p) { return poly_to_json(p).dump(2); }

Poly2 load_poly(const std::filesystem::path& path) {
    return parse_poly(read_file(path));
}

void save_poly(const Poly2& p, const std::filesystem::path& path) {
    write_file(path, serialize_poly(p) + "\n");
}

RationalInnerFunction parse_rif(const std::string& text) {
    json j = must_parse(text);
    Poly2 denom = poly_from_json(j);
    if (!j.contains("lambda") || !j["lambda"].is_object())
        fail(ErrorKind::ParseError, "missing 'lambda' object");
    cd lambda(get_num(j["lambda"], "re", 0.0), get_num(j["lambda"], "im", 0.0));
    if (!j.contains("monomial_powers") || !j["monomial_powers"].is_array() ||
        j["monomial_powers"].size() != 2)
        fail(ErrorKind::ParseError, "'monomial_powers' must be two integers");
    const json& mp = j["monomial_powers"];
    if (!mp[0].is_number_integer() || !mp[1].is_number_integer())
        fail(ErrorKind::ParseError, "'monomial_powers' must be two integers");
    int m1 = mp[0].get<int>(), m2 = mp[1].get<int>();
    if (m1 < 0 || m2 < 0 || m1 > 64 || m2 > 64)
        fail(ErrorKind::ParseError, "monomial powers outside [0, 64]");
    return make_rif(lambda, m1, m2, denom);
}

std::string serialize_rif(const RationalInnerFunction& phi) {
    json j = poly_to_json(phi.denominator());
    j["lambda"]["re"] = phi.lambda().real();
    j["lambda"]["im"] = phi.lambda().imag();
    j["monomial_powers"] = {phi.power1(), phi.power2()};
    return j.dump(2);
}

RationalInnerFunction load_rif(const std::filesystem::path& path) {
    return parse_rif(read_file(path));
}

void save_rif(const RationalInnerFunction& phi,
              const std::filesystem::path& path) {
    write_file(path, serialize_rif(phi) + "\n");
}

SosCertificate parse_sos(const std::string& text) {
    json j = must_parse(text);
    SosCertificate cert;
    for (auto [key, dst] : {std::pair{"sos_1", &cert.sos1},
                            std::pair{"sos_2", &cert.sos2}}) {
        if (!j.contains(key) || !j[key].is_array())
            fail(ErrorKind::ParseError,
                 std::string("missing array '") + key + "'");
        for (const json& e : j[key]) dst->push_back(poly_from_json(e));
    }
    return cert;
}

std::string serialize_sos(const SosCertificate& cert) {
    json j;
    j["sos_1"] = json::array();
    j["sos_2"] = json::array();
    for (const Poly2& q : cert.sos1) j["sos_1"].push_back(poly_to_json(q));
    for (const Poly2& q : cert.sos2) j["sos_2"].push_back(poly_to_json(q));
    return j.dump(2);
}

SosCertificate load_sos(const std::filesystem::path& path) {
    return parse_sos(read_file(path));
}

std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) fail(ErrorKind::ParseError, "number format failed");
    return std::string(buf, end);
}

namespace {

json fit_to_json(const PowerLawFit& fit) {
    json j;
    j["exponent"] = fit.exponent;
    j["exponent_stderr"] = fit.exponent_stderr;
    j["log_constant"] = fit.log_constant;
    j["r_squared"] = fit.r_squared;
    j["delta_range"] = {fit.delta_range.first, fit.delta_range.second};
    return j;
}

json scan_meta(const CarlesonScan& scan) {
    json meta;
    meta["center"] = {scan.center.theta1, scan.center.theta2};
    meta["fit"] = fit_to_json(scan.fit);
    meta["verdict"] = scan.verdict;
    return meta;
}

std::string iso_timestamp() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

} // namespace

std::string scan_to_csv(const CarlesonScan& scan) {
    std::string out = "delta,volume,std_error,reference,ratio\n";
    for (const ScanRow& r : scan.rows) {
        out += format_double(r.delta) + "," + format_double(r.volume) + "," +
               format_double(r.std_error) + "," + format_double(r.reference) +
               "," + format_double(r.ratio) + "\n";
    }
    out += "# " + scan_meta(scan).dump() + "\n";
    return out;
}

std::string scan_to_json(const CarlesonScan& scan, std::uint64_t seed,
                         bool with_timestamp) {
    json j = scan_meta(scan);
    j["seed"] = seed;
    j["rows"] = json::array();
    for (const ScanRow& r : scan.rows) {
        json row;
        row["delta"] = r.delta;
        row["volume"] = r.volume;
        row["std_error"] = r.std_error;
        row["reference"] = r.reference;
        row["ratio"] = r.ratio;
        j["rows"].push_back(row);
    }
    if (with_timestamp) j["timestamp"] = iso_timestamp();
    return j.dump(2) + "\n";
}

std::string norm_scan_to_csv(const NormGrowthScan& scan, double beta_src,
                             double beta_tgt, std::uint64_t symbol_hash) {
    std::string out = "N,lambda_max\n";
    for (const NormGrowthRow& r : scan.rows)
        out += std::to_string(r.N) + "," + format_double(r.lambda_max) + "\n";
    char hex[32];
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(symbol_hash));
    json meta;
    meta["beta_src"] = beta_src;
    meta["beta_tgt"] = beta_tgt;
    meta["symbol_hash"] = hex;
    meta["verdict"] = scan.verdict;
    out += "# " + meta.dump() + "\n";
    return out;
}

std::uint64_t content_hash(const std::string& canonical) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

} // namespace riflab::io
