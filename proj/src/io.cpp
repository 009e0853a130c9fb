#include "cpmfrob/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace cpmfrob::io {

using nlohmann::json;

namespace {

constexpr const char* kConventions =
    "row-major; choi input-factor-first; purification environment second";

json mat_to_json(const Mat& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

Mat mat_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
        throw ParseError("matrix object must have rows/cols/entries");
    const std::size_t rows = j.at("rows").get<std::size_t>();
    const std::size_t cols = j.at("cols").get<std::size_t>();
    const json& e = j.at("entries");
    if (!e.is_array() || e.size() != rows) throw ParseError("matrix entries row count mismatch");
    Mat m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const json& row = e[i];
        if (!row.is_array() || row.size() != cols) throw ParseError("matrix entries column count mismatch");
        for (std::size_t jj = 0; jj < cols; ++jj) {
            const json& z = row[jj];
            if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
                throw ParseError("matrix entry must be a [re, im] pair");
            m(i, jj) = cplx(z[0].get<double>(), z[1].get<double>());
        }
    }
    if (!m.all_finite()) throw ParseError("matrix has non-finite entries");
    return m;
}

json kraus_to_json(const std::vector<Mat>& ks) {
    json a = json::array();
    for (const auto& k : ks) a.push_back(mat_to_json(k));
    return a;
}

std::vector<Mat> kraus_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("kraus list must be a nonempty array");
    std::vector<Mat> ks;
    for (const auto& m : j) ks.push_back(mat_from_json(m));
    return ks;
}

}  // namespace

const char* StructureFile::kind() const {
    if (std::holds_alternative<FrobeniusAlgebra>(payload)) return "fhilb_algebra";
    if (std::holds_alternative<CpComonoid>(payload)) return "cp_comonoid";
    return "cp_map";
}

std::string emit_structure(const StructureFile& s) {
    json j;
    j["version"] = "1";
    j["kind"] = s.kind();
    json meta;
    for (const auto& [k, v] : s.metadata) meta[k] = v;
    meta["conventions"] = kConventions;
    j["metadata"] = std::move(meta);

    if (const auto* alg = std::get_if<FrobeniusAlgebra>(&s.payload)) {
        j["dims"] = alg->dim;
        j["payload"] = {{"delta", mat_to_json(alg->delta)}, {"epsilon", mat_to_json(alg->epsilon)}};
    } else if (const auto* com = std::get_if<CpComonoid>(&s.payload)) {
        j["dims"] = com->dim;
        j["payload"] = {{"delta_kraus", kraus_to_json(com->delta.kraus())},
                        {"counit_kraus", kraus_to_json(com->counit.kraus())}};
    } else {
        const auto& m = std::get<CpMap>(s.payload);
        j["dims"] = json::array({m.in_dim(), m.out_dim()});
        j["payload"] = {{"kraus", kraus_to_json(m.kraus())}};
    }
    return j.dump(2) + "\n";
}

StructureFile parse_structure(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    try {
        if (!j.is_object()) throw ParseError("top level must be an object");
        if (j.at("version").get<std::string>() != "1") throw ParseError("unrecognized version");
        const std::string kind = j.at("kind").get<std::string>();
        const json& payload = j.at("payload");

        StructureFile s;
        if (j.contains("metadata") && j["metadata"].is_object())
            for (const auto& [k, v] : j["metadata"].items())
                if (v.is_string()) s.metadata[k] = v.get<std::string>();

        if (kind == "fhilb_algebra") {
            const std::size_t d = j.at("dims").get<std::size_t>();
            FrobeniusAlgebra alg{d, mat_from_json(payload.at("delta")),
                                 mat_from_json(payload.at("epsilon")), false};
            if (alg.delta.rows() != d * d || alg.delta.cols() != d)
                throw ParseError("delta shape inconsistent with dims");
            if (alg.epsilon.rows() != 1 || alg.epsilon.cols() != d)
                throw ParseError("epsilon shape inconsistent with dims");
            s.payload = std::move(alg);
        } else if (kind == "cp_comonoid") {
            const std::size_t d = j.at("dims").get<std::size_t>();
            try {
                s.payload = CpComonoid{d, CpMap(d, d * d, kraus_from_json(payload.at("delta_kraus"))),
                                       CpMap(d, 1, kraus_from_json(payload.at("counit_kraus")))};
            } catch (const DimMismatch& e) {
                throw ParseError(std::string("kraus shapes inconsistent with dims: ") + e.what());
            }
        } else if (kind == "cp_map") {
            const json& dims = j.at("dims");
            if (!dims.is_array() || dims.size() != 2) throw ParseError("cp_map dims must be [in, out]");
            const std::size_t in = dims[0].get<std::size_t>(), out = dims[1].get<std::size_t>();
            try {
                s.payload = CpMap(in, out, kraus_from_json(payload.at("kraus")));
            } catch (const DimMismatch& e) {
                throw ParseError(std::string("kraus shapes inconsistent with dims: ") + e.what());
            }
        } else {
            throw ParseError("unknown kind: " + kind);
        }
        return s;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed structure file: ") + e.what());
    }
}

void save_structure(const std::string& path, const StructureFile& s) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open for writing: " + path);
    f << emit_structure(s);
}

StructureFile load_structure(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ParseError("cannot open: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_structure(ss.str());
}

}  // namespace cpmfrob::io
