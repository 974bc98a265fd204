#include "trinorm/model_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace trinorm {
namespace {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
    json data = json::array();
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) data.push_back(m(i, j));
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

json vector_to_json(const Vector& v) {
    json data = json::array();
    for (Index i = 0; i < v.size(); ++i) data.push_back(v[i]);
    return data;
}

[[noreturn]] void malformed(const std::string& what) {
    throw MalformedDocument("model document: " + what);
}

const json& field(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) malformed(std::string("missing field '") + key + "'");
    return *it;
}

double number_field(const json& j) {
    if (!j.is_number()) malformed("expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) malformed("non-finite number");
    return v;
}

Matrix matrix_from_json(const json& j, Index rows, Index cols,
                        const char* name) {
    if (!j.is_object()) malformed(std::string(name) + " must be an object");
    const Index r = field(j, "rows").get<Index>();
    const Index c = field(j, "cols").get<Index>();
    const json& data = field(j, "data");
    if (r != rows || c != cols)
        malformed(std::string(name) + " has shape " + std::to_string(r) + "x" +
                  std::to_string(c) + ", expected " + std::to_string(rows) +
                  "x" + std::to_string(cols));
    if (!data.is_array() || static_cast<Index>(data.size()) != r * c)
        malformed(std::string(name) + " data length does not match shape");
    Matrix m(rows, cols);
    Index idx = 0;
    for (Index i = 0; i < rows; ++i)
        for (Index j2 = 0; j2 < cols; ++j2)
            m(i, j2) = number_field(data[static_cast<std::size_t>(idx++)]);
    return m;
}

Vector vector_from_json(const json& j, Index size, const char* name) {
    if (!j.is_array() || static_cast<Index>(j.size()) != size)
        malformed(std::string(name) + " must be an array of length " +
                  std::to_string(size));
    Vector v(size);
    for (Index i = 0; i < size; ++i)
        v[i] = number_field(j[static_cast<std::size_t>(i)]);
    return v;
}

json affine_to_json(const AffineMap& map) {
    return json{{"linear", matrix_to_json(map.linear)},
                {"offset", vector_to_json(map.offset)}};
}

AffineMap affine_from_json(const json& j, Index out, Index in,
                           const char* name) {
    if (!j.is_object()) malformed(std::string(name) + " must be an object");
    AffineMap map;
    map.linear = matrix_from_json(field(j, "linear"), out, in,
                                  (std::string(name) + ".linear").c_str());
    map.offset = vector_from_json(field(j, "offset"), out,
                                  (std::string(name) + ".offset").c_str());
    return map;
}

} // namespace

std::string serialize(const FittedTransform& model) {
    json j;
    j["version"] = model.version;
    j["n"] = model.n;
    j["m"] = model.m;
    j["whitening"] = affine_to_json(model.whitening);
    j["lift"] = json{{"alphas", vector_to_json(model.lift.alphas)},
                     {"betas", matrix_to_json(model.lift.betas)},
                     {"z_whitening", affine_to_json(model.lift.z_whitening)}};
    j["rotation"] = matrix_to_json(model.rotation);
    j["residual_norm"] = model.residual_norm;
    return j.dump(2);
}

namespace {
FittedTransform deserialize_checked(const json& j);
}

FittedTransform deserialize(const std::string& document) {
    json j;
    try {
        j = json::parse(document);
    } catch (const json::parse_error& e) {
        malformed(std::string("not valid JSON: ") + e.what());
    }
    try {
        return deserialize_checked(j);
    } catch (const json::exception& e) {
        malformed(std::string("unexpected document structure: ") + e.what());
    }
}

namespace {
FittedTransform deserialize_checked(const json& j) {
    if (!j.is_object()) malformed("top level must be an object");

    const json& version = field(j, "version");
    if (!version.is_string()) malformed("version must be a string");
    if (version.get<std::string>() != kModelVersion)
        throw VersionMismatch("model document: version '" +
                              version.get<std::string>() +
                              "' not supported (expected '" +
                              std::string(kModelVersion) + "')");

    const json& jn = field(j, "n");
    if (!jn.is_number_integer() || jn.get<Index>() < 1)
        malformed("n must be a positive integer");
    const Index n = jn.get<Index>();
    const json& jm = field(j, "m");
    if (!jm.is_number_integer() || jm.get<Index>() != n * (n + 1) / 2)
        malformed("m must equal n(n+1)/2");
    const Index m = n * (n + 1) / 2;

    FittedTransform model;
    model.version = kModelVersion;
    model.n = n;
    model.m = m;
    model.whitening = affine_from_json(field(j, "whitening"), n, n, "whitening");

    const json& lift = field(j, "lift");
    if (!lift.is_object()) malformed("lift must be an object");
    model.lift.basis = make_sym_basis(n);
    model.lift.alphas = vector_from_json(field(lift, "alphas"), m, "lift.alphas");
    model.lift.betas =
        matrix_from_json(field(lift, "betas"), m, n, "lift.betas");
    model.lift.z_whitening =
        affine_from_json(field(lift, "z_whitening"), m, m, "lift.z_whitening");

    model.rotation =
        matrix_from_json(field(j, "rotation"), n + m, n + m, "rotation");
    const double ortho_drift =
        (model.rotation.transpose() * model.rotation -
         Matrix::Identity(n + m, n + m))
            .cwiseAbs()
            .maxCoeff();
    if (ortho_drift > 1e-10) malformed("rotation is not orthogonal");

    model.residual_norm = number_field(field(j, "residual_norm"));
    if (model.residual_norm < 0) malformed("residual_norm must be >= 0");
    return model;
}
} // namespace

void save_model(const FittedTransform& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << serialize(model) << '\n';
    if (!out) throw Error("failed writing '" + path + "'");
}

FittedTransform load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return deserialize(buf.str());
}

} // namespace trinorm
