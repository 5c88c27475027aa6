#ifndef STEKLOV_SHAPE_IO_HPP
#define STEKLOV_SHAPE_IO_HPP

#include <filesystem>
#include <json.hpp>
#include <string>
#include <vector>

#include "steklov/eigensolver.hpp"
#include "steklov/fourier_shape.hpp"

namespace steklov {

inline constexpr const char* kVersion = "0.1.0";

/// Shape files are JSON objects {"a": [...], "b": [...]}; "b" may be omitted.
FourierShape shape_from_json(const nlohmann::json& j);
FourierShape read_shape(const std::filesystem::path& path);

nlohmann::json shape_to_json(const FourierShape& shape);
void write_shape(const std::filesystem::path& path, const FourierShape& shape);

/// {"lambda": [...], "Lambda": [...], "clusters": [[...]], "n": n}
nlohmann::json spectrum_to_json(const SteklovSpectrum& spectrum, double cluster_rel_tol = 1e-6);
void write_spectrum_json(const std::filesystem::path& path, const SteklovSpectrum& spectrum);

/// CSV with one eigenvalue per row: j,lambda,Lambda.
void write_spectrum_csv(const std::filesystem::path& path, const SteklovSpectrum& spectrum);

/// Reproducibility sidecar written next to every command output.
struct RunManifest {
    std::string command;
    std::vector<std::string> inputs;
    nlohmann::json parameters;
    std::vector<std::string> outputs;
    double wall_time_seconds = 0.0;
};

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);

} // namespace steklov

#endif
