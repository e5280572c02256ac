#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "quadrl/math/mat.hpp"

namespace quadrl {

// Self-describing binary container of named double tensors plus string
// metadata. Little-endian, FNV-1a checksummed, versioned. Round trips are
// bit-exact at double precision.
struct Checkpoint {
  static constexpr std::uint32_t kVersion = 1;

  struct Tensor {
    std::string name;
    std::vector<std::uint64_t> dims;
    std::vector<double> data;
  };

  std::map<std::string, std::string> meta;
  std::vector<Tensor> tensors;

  void add(const std::string& name, const Mat& m);
  const Tensor& find(const std::string& name) const;  // throws IoError if absent
  void to_mat(const std::string& name, Mat& out) const;

  std::string meta_at(const std::string& key) const;  // throws IoError if absent
  double meta_double(const std::string& key) const;
  long meta_long(const std::string& key) const;

  void save(const std::string& path) const;
  static Checkpoint load(const std::string& path);
};

}  // namespace quadrl
