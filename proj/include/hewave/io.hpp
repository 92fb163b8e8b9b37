#pragma once
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>
#include "hewave/continuation.hpp"

namespace hew {

inline constexpr const char* kCodeVersion = "hewave 0.1.0";

struct RunConfig {
    PhysParams params;
    GridSpec grid;
    int seed_k = 1;
    int seed_sign = +1;
    ContinuationConfig continuation;
    std::vector<double> atilde_list; // surface sweep values
    int jobs = 1;
    std::string output_path = "out";
};

// strict parse: unknown keys anywhere are an error
RunConfig parse_config_text(const std::string& json_text);
RunConfig load_config(const std::filesystem::path& file);

void write_branch_file(const Branch& br, const std::filesystem::path& file);
Branch read_branch_file(const std::filesystem::path& file);

void write_speed_amplitude_csv(const Branch& br, const std::filesystem::path& file);
void write_profile_csvs(const Branch& br, const std::filesystem::path& dir,
                        int max_profiles = 8);

// subcommand drivers; return process exit codes (0 ok, 2 numerical failure)
int cmd_linear(const RunConfig& cfg, int kmax, std::ostream& out);
int cmd_branch(const RunConfig& cfg, std::ostream& log);
int cmd_surface(const RunConfig& cfg, std::ostream& log);
int cmd_verify(const RunConfig& cfg, const std::filesystem::path& branch_file,
               std::ostream& out);

} // namespace hew
