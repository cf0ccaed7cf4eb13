#include "qmc/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qmc::io {

using nlohmann::json;

Complex parse_complex(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw ArgumentError("parse_complex: empty input");
    for (char& c : s)
        if (c == 'j' || c == 'I') c = 'i';

    // split into real and imaginary chunks at a +/- that is not an exponent sign
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            parts.push_back(s.substr(start, i - start));
            start = i;
        }
    }
    parts.push_back(s.substr(start));
    if (parts.size() > 2) throw ArgumentError("parse_complex: malformed '" + text + "'");

    double re = 0.0, im = 0.0;
    auto read = [&](const std::string& p) {
        if (p.back() == 'i') {
            std::string body = p.substr(0, p.size() - 1);
            if (body.empty() || body == "+") return im += 1.0, void();
            if (body == "-") return im += -1.0, void();
            im += std::stod(body);
        } else {
            re += std::stod(p);
        }
    };
    try {
        for (const auto& p : parts) read(p);
    } catch (const std::exception&) {
        throw ArgumentError("parse_complex: malformed '" + text + "'");
    }
    return {re, im};
}

namespace {

json cplx(const Complex& z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

Complex cplx_from(const json& j) {
    if (!j.is_object() || !j.contains("re") || !j.contains("im"))
        throw ArgumentError("tuple_from_json: complex values must be {re, im} objects");
    return {j["re"].get<double>(), j["im"].get<double>()};
}

}  // namespace

std::string tuple_to_json(const SystemTuple& t, const std::string& name, int indent) {
    json doc;
    doc["schema_version"] = "1";
    doc["q"] = cplx(t.q);
    json poles = json::array();
    for (const auto& b : t.poles) poles.push_back(cplx(b));
    doc["poles"] = poles;
    json mats = json::array();
    for (const auto& m : t.matrices) {
        json rows = json::array();
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            json row = json::array();
            for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(cplx(m(r, c)));
            rows.push_back(row);
        }
        mats.push_back(rows);
    }
    doc["matrices"] = mats;
    if (!name.empty()) doc["metadata"] = json{{"name", name}};
    return doc.dump(indent);
}

SystemTuple tuple_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ArgumentError(std::string("tuple_from_json: ") + e.what());
    }
    if (!doc.contains("schema_version") || doc["schema_version"].get<std::string>() != "1")
        throw ArgumentError("tuple_from_json: unsupported schema_version");
    if (!doc.contains("q") || !doc.contains("poles") || !doc.contains("matrices"))
        throw ArgumentError("tuple_from_json: missing q/poles/matrices");

    const Complex q = cplx_from(doc["q"]);
    std::vector<Complex> poles;
    for (const auto& b : doc["poles"]) poles.push_back(cplx_from(b));
    std::vector<CMatrix> mats;
    for (const auto& jm : doc["matrices"]) {
        const auto rows = jm.size();
        if (rows == 0) throw ArgumentError("tuple_from_json: empty matrix");
        const auto cols = jm[0].size();
        CMatrix m(rows, cols);
        for (std::size_t r = 0; r < rows; ++r) {
            if (jm[r].size() != cols)
                throw ArgumentError("tuple_from_json: ragged matrix rows");
            for (std::size_t c = 0; c < cols; ++c) m(r, c) = cplx_from(jm[r][c]);
        }
        mats.push_back(std::move(m));
    }
    try {
        return SystemTuple(QBase(q), std::move(poles), std::move(mats));
    } catch (const Error& e) {
        throw ArgumentError(std::string("tuple_from_json: ") + e.what());
    }
}

SystemTuple load_tuple(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("load_tuple: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return tuple_from_json(ss.str());
}

void save_tuple(const SystemTuple& t, const std::string& path, const std::string& name) {
    std::ofstream out(path);
    if (!out) throw ArgumentError("save_tuple: cannot open " + path);
    out << tuple_to_json(t, name) << "\n";
}

}  // namespace qmc::io
