#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ergm/model.hpp"

namespace ergm {

// JSON spec:
//   {"n": 64,
//    "beta": [0.0, 0.1, 0.1],
//    "motifs": [{"vertices": 2, "edges": [[0, 1]]}, ...]}
// Errors are SpecError with "<source>:<line>: <message>".
ErgmSpec parse_spec_text(const std::string& text, const std::string& source = "<spec>");
ErgmSpec parse_spec_file(const std::filesystem::path& path);
std::string serialize_spec(const ErgmSpec& spec);

struct RunConfig {
    std::string subcommand;
    std::filesystem::path spec_path;
    std::optional<std::size_t> n;
    std::vector<std::size_t> grid;
    std::uint64_t seed = 1;
    std::size_t sweeps = 200;
    std::size_t burnin = 50;
    std::size_t thin = 1;
    std::size_t replicas = 4;
    double eta = 0.1;
    std::size_t well_index = 0;
    std::filesystem::path out = ".";
    std::string method = "wasserstein-plugin";  // scaling only
    std::size_t threads = 0;

    // Throws SpecError: unknown subcommand, missing spec file, n < 8 for a
    // simulation subcommand, bad grid.
    void validate() const;
    bool simulates() const;
};

const std::vector<std::string>& subcommands();
const std::vector<std::string>& scaling_methods();

} // namespace ergm
