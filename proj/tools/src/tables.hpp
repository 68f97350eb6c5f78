#pragma once

#include <filesystem>
#include <string>

// Recomputes every reference value shipped in the data directory and
// reports pass/fail per cell. Returns the number of failing cells.
// With verbose off, only failing cells and errors are printed.
int run_tables(const std::filesystem::path& data_dir, const std::string& filter,
               bool verbose = true);
