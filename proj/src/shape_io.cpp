#include "steklov/shape_io.hpp"
#include "steklov/errors.hpp"

#include <fstream>
#include <iomanip>

namespace steklov {

using nlohmann::json;

namespace {

Eigen::VectorXd to_vector(const json& arr, const char* name) {
    if (!arr.is_array()) throw SteklovError(std::string("shape JSON: \"") + name + "\" must be an array");
    Eigen::VectorXd v(arr.size());
    Eigen::Index i = 0;
    for (const auto& entry : arr) {
        if (!entry.is_number()) throw SteklovError(std::string("shape JSON: \"") + name + "\" must be numeric");
        v[i++] = entry.get<double>();
    }
    return v;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw SteklovError("cannot open for writing: " + path.string());
    return out;
}

} // namespace

FourierShape shape_from_json(const json& j) {
    if (!j.is_object() || !j.contains("a"))
        throw SteklovError("shape JSON must be an object with an \"a\" array");
    Eigen::VectorXd a = to_vector(j.at("a"), "a");
    Eigen::VectorXd b;
    if (j.contains("b")) b = to_vector(j.at("b"), "b");
    return FourierShape(std::move(a), std::move(b));
}

FourierShape read_shape(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw SteklovError("cannot open shape file: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw SteklovError("invalid JSON in " + path.string() + ": " + e.what());
    }
    return shape_from_json(j);
}

json shape_to_json(const FourierShape& shape) {
    json j;
    j["a"] = std::vector<double>(shape.cosine_coeffs().begin(), shape.cosine_coeffs().end());
    j["b"] = std::vector<double>(shape.sine_coeffs().begin(), shape.sine_coeffs().end());
    return j;
}

void write_shape(const std::filesystem::path& path, const FourierShape& shape) {
    open_out(path) << shape_to_json(shape).dump(2) << "\n";
}

json spectrum_to_json(const SteklovSpectrum& spectrum, double cluster_rel_tol) {
    json j;
    j["n"] = spectrum.grid.n;
    std::vector<double> lambda(spectrum.count()), big_lambda(spectrum.count());
    for (int i = 0; i < spectrum.count(); ++i) {
        lambda[i] = spectrum.lambdas[i];
        big_lambda[i] = normalized_eigenvalue(spectrum, i);
    }
    j["lambda"] = lambda;
    j["Lambda"] = big_lambda;
    j["clusters"] = multiplicity_clusters(spectrum, cluster_rel_tol);
    return j;
}

void write_spectrum_json(const std::filesystem::path& path, const SteklovSpectrum& spectrum) {
    open_out(path) << spectrum_to_json(spectrum).dump(2) << "\n";
}

void write_spectrum_csv(const std::filesystem::path& path, const SteklovSpectrum& spectrum) {
    auto out = open_out(path);
    out << "j,lambda,Lambda\n" << std::setprecision(16);
    for (int i = 0; i < spectrum.count(); ++i)
        out << i << "," << spectrum.lambdas[i] << "," << normalized_eigenvalue(spectrum, i) << "\n";
}

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest) {
    json j;
    j["command"] = manifest.command;
    j["inputs"] = manifest.inputs;
    j["parameters"] = manifest.parameters;
    j["outputs"] = manifest.outputs;
    j["wall_time_seconds"] = manifest.wall_time_seconds;
    j["version"] = kVersion;
    open_out(path) << j.dump(2) << "\n";
}

} // namespace steklov
