#pragma once

#include <filesystem>
#include <random>
#include <string>

namespace fixtures {

struct TempDir {
    std::filesystem::path path;

    explicit TempDir(const std::string& prefix = "biaslens_test") {
        auto base = std::filesystem::temp_directory_path();
        std::random_device rd;
        for (int attempt = 0; attempt < 64; ++attempt) {
            auto candidate = base / (prefix + "_" + std::to_string(rd()));
            if (std::filesystem::create_directory(candidate)) {
                path = candidate;
                return;
            }
        }
        throw std::runtime_error("could not create temp directory");
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
};

}  // namespace fixtures
