// bimcir: balanced implicit simulation of the delay CIR model with jumps.
//
//   bimcir <paths|converge|moments|bond|barrier> --config FILE [--out FILE]
//          [--threads N] [--seed S]
//
// Exit codes: 0 success, 1 configuration error, 2 runtime error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "bimcir/app.hpp"

namespace {

constexpr int kConfigError = 1;
constexpr int kRuntimeError = 2;

bool write_file(const std::string& path, const std::string& body) {
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (out && out.write(body.data(), static_cast<std::streamsize>(body.size())) && out.flush()) return true;
    }
    std::error_code ec;
    std::filesystem::remove(path, ec);
    return false;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Balanced implicit method for the delay CIR model with jumps"};
    std::string command_name;
    std::string config_path;
    std::string out_path;
    unsigned threads = 1;
    std::uint64_t seed = 0;

    app.add_option("command", command_name, "paths | converge | moments | bond | barrier")->required();
    app.add_option("--config", config_path, "key = value configuration file")->required();
    app.add_option("--out", out_path, "CSV output file (overrides `output` in the config)");
    app.add_option("--threads", threads, "worker threads; results do not depend on it")->check(CLI::PositiveNumber);
    auto* seed_opt = app.add_option("--seed", seed, "override master_seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    }

    const auto command = bimcir::parse_command(command_name);
    if (!command) {
        std::cerr << "unknown command '" << command_name << "'\n";
        return kConfigError;
    }

    bimcir::RunConfig config;
    try {
        std::ifstream in(config_path, std::ios::binary);
        if (!in) {
            std::cerr << "cannot read config file " << config_path << '\n';
            return kConfigError;
        }
        std::ostringstream text;
        text << in.rdbuf();
        config = bimcir::parse_config(text.str());
        if (*seed_opt) config.master_seed = seed;
        if (!out_path.empty()) config.output = out_path;
    } catch (const bimcir::Error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    }

    bimcir::CommandResult result;
    try {
        result = bimcir::run_command(*command, config, threads);
    } catch (const bimcir::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntimeError;
    }

    if (config.output.empty()) {
        std::cout << result.csv;
        std::cerr << result.summary << '\n';
    } else {
        if (!write_file(config.output, result.csv)) {
            std::cerr << "error: cannot write " << config.output << '\n';
            return kRuntimeError;
        }
        std::cout << result.summary << '\n';
    }
    return 0;
}
