// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace agesirs {

// Shortest decimal representation that round-trips to the same double.
std::string fmt(double x);
std::string fmt(std::int64_t x);

// Buffered CSV writer; one writer per file, flushed on close/destruction.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path,
            const std::vector<std::string>& header);
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void row(const std::vector<std::string>& cells);  // cell count checked
  void close();

 private:
  std::ofstream out_;
  std::string buf_;
  std::size_t n_cols_;
  std::filesystem::path path_;
  bool closed_ = false;
};

void write_text_file(const std::filesystem::path& path,
                     const std::string& content);

}  // namespace agesirs
