#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace biaslens::csv {

// Minimal RFC-4180 reader: quoted fields, doubled quotes, CRLF tolerated.
// Whole-file reads only; the inputs this project handles are small
// relative to the JSONL corpus, which has its own streaming loader.
std::vector<std::vector<std::string>> read_file(const std::filesystem::path& path);
std::vector<std::string> split_line(const std::string& line);

std::string escape_field(std::string_view field);

// Shortest round-trip decimal form, the same for every run and platform.
std::string format_double(double value);

}  // namespace biaslens::csv
