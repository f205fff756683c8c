// SPDX-License-Identifier: Apache-2.0
#include "agesirs/csv.h"

#include <charconv>
#include <stdexcept>
#include <system_error>

namespace agesirs {

std::string fmt(double x) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  if (res.ec != std::errc())
    throw std::runtime_error("fmt: to_chars failed");
  return std::string(buf, res.ptr);
}

std::string fmt(std::int64_t x) {
  char buf[24];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::filesystem::path& path,
                     const std::vector<std::string>& header)
    : n_cols_(header.size()), path_(path) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  out_.open(path, std::ios::binary | std::ios::trunc);
  if (!out_) throw std::runtime_error("cannot open " + path.string());
  buf_.reserve(1 << 20);
  row(header);
}

CsvWriter::~CsvWriter() {
  try {
    close();
  } catch (...) {
  }
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != n_cols_)
    throw std::runtime_error(path_.string() + ": bad cell count");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) buf_ += ',';
    buf_ += cells[i];
  }
  buf_ += '\n';
  if (buf_.size() > (1 << 20)) {
    out_.write(buf_.data(), static_cast<std::streamsize>(buf_.size()));
    buf_.clear();
  }
}

void CsvWriter::close() {
  if (closed_) return;
  closed_ = true;
  if (!buf_.empty())
    out_.write(buf_.data(), static_cast<std::streamsize>(buf_.size()));
  out_.close();
  if (out_.fail()) throw std::runtime_error("write failed: " + path_.string());
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& content) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (out.fail()) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace agesirs
