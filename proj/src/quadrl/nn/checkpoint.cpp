#include "quadrl/nn/checkpoint.hpp"

#include <cstdio>
#include <cstring>

#include "quadrl/error.hpp"

namespace quadrl {

namespace {

constexpr char kMagic[8] = {'Q', 'R', 'L', 'C', 'K', 'P', 'T', '\n'};

std::uint64_t fnv1a(const unsigned char* p, size_t n, std::uint64_t h) {
  for (size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

struct Writer {
  std::vector<unsigned char> buf;
  void bytes(const void* p, size_t n) {
    const auto* c = static_cast<const unsigned char*>(p);
    buf.insert(buf.end(), c, c + n);
  }
  void u32(std::uint32_t v) { bytes(&v, 4); }
  void u64(std::uint64_t v) { bytes(&v, 8); }
  void str(const std::string& s) {
    u32(static_cast<std::uint32_t>(s.size()));
    bytes(s.data(), s.size());
  }
};

struct Reader {
  const unsigned char* p;
  size_t n, pos = 0;
  void bytes(void* out, size_t k) {
    if (pos + k > n) throw IoError("checkpoint truncated");
    std::memcpy(out, p + pos, k);
    pos += k;
  }
  std::uint32_t u32() { std::uint32_t v; bytes(&v, 4); return v; }
  std::uint64_t u64() { std::uint64_t v; bytes(&v, 8); return v; }
  std::string str() {
    const std::uint32_t k = u32();
    if (pos + k > n) throw IoError("checkpoint truncated");
    std::string s(reinterpret_cast<const char*>(p + pos), k);
    pos += k;
    return s;
  }
};

static_assert(sizeof(double) == 8, "8-byte IEEE doubles required");

}  // namespace

void Checkpoint::add(const std::string& name, const Mat& m) {
  Tensor t;
  t.name = name;
  t.dims = {static_cast<std::uint64_t>(m.rows), static_cast<std::uint64_t>(m.cols)};
  t.data = m.d;
  tensors.push_back(std::move(t));
}

const Checkpoint::Tensor& Checkpoint::find(const std::string& name) const {
  for (const auto& t : tensors)
    if (t.name == name) return t;
  throw IoError("checkpoint tensor '" + name + "' not found");
}

void Checkpoint::to_mat(const std::string& name, Mat& out) const {
  const Tensor& t = find(name);
  if (t.dims.size() != 2) throw IoError("tensor '" + name + "' is not 2-d");
  out.rows = static_cast<int>(t.dims[0]);
  out.cols = static_cast<int>(t.dims[1]);
  out.d = t.data;
}

std::string Checkpoint::meta_at(const std::string& key) const {
  auto it = meta.find(key);
  if (it == meta.end()) throw IoError("checkpoint metadata '" + key + "' missing");
  return it->second;
}

double Checkpoint::meta_double(const std::string& key) const {
  return std::stod(meta_at(key));
}

long Checkpoint::meta_long(const std::string& key) const {
  return std::stol(meta_at(key));
}

void Checkpoint::save(const std::string& path) const {
  Writer w;
  w.bytes(kMagic, 8);
  w.u32(kVersion);
  w.u32(static_cast<std::uint32_t>(meta.size()));
  for (const auto& [k, v] : meta) {
    w.str(k);
    w.str(v);
  }
  w.u32(static_cast<std::uint32_t>(tensors.size()));
  for (const auto& t : tensors) {
    w.str(t.name);
    w.u32(static_cast<std::uint32_t>(t.dims.size()));
    for (auto d : t.dims) w.u64(d);
    w.u64(static_cast<std::uint64_t>(t.data.size()));
    w.bytes(t.data.data(), t.data.size() * sizeof(double));
  }
  const std::uint64_t sum = fnv1a(w.buf.data() + 8, w.buf.size() - 8, 14695981039346656037ULL);
  w.u64(sum);

  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw IoError("cannot write checkpoint '" + path + "'");
  const size_t written = std::fwrite(w.buf.data(), 1, w.buf.size(), f);
  std::fclose(f);
  if (written != w.buf.size()) throw IoError("short write on '" + path + "'");
}

Checkpoint Checkpoint::load(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw IoError("cannot open checkpoint '" + path + "'");
  std::fseek(f, 0, SEEK_END);
  const long size = std::ftell(f);
  std::fseek(f, 0, SEEK_SET);
  std::vector<unsigned char> buf(static_cast<size_t>(size));
  const size_t got = std::fread(buf.data(), 1, buf.size(), f);
  std::fclose(f);
  if (got != buf.size()) throw IoError("short read on '" + path + "'");

  if (buf.size() < 8 + 4 + 8 || std::memcmp(buf.data(), kMagic, 8) != 0)
    throw IoError("'" + path + "' is not a checkpoint file");

  const std::uint64_t stored_sum =
      [&] { std::uint64_t v; std::memcpy(&v, buf.data() + buf.size() - 8, 8); return v; }();
  const std::uint64_t actual_sum =
      fnv1a(buf.data() + 8, buf.size() - 16, 14695981039346656037ULL);
  if (stored_sum != actual_sum)
    throw IoError("checksum failure in '" + path + "' (corrupt or truncated)");

  Reader rd{buf.data() + 8, buf.size() - 16};
  Checkpoint ck;
  const std::uint32_t version = rd.u32();
  if (version != kVersion)
    throw IoError("checkpoint version " + std::to_string(version) +
                  " unsupported (expected " + std::to_string(kVersion) + ")");
  const std::uint32_t nmeta = rd.u32();
  for (std::uint32_t i = 0; i < nmeta; ++i) {
    std::string k = rd.str();
    ck.meta[k] = rd.str();
  }
  const std::uint32_t ntens = rd.u32();
  for (std::uint32_t i = 0; i < ntens; ++i) {
    Tensor t;
    t.name = rd.str();
    const std::uint32_t nd = rd.u32();
    for (std::uint32_t j = 0; j < nd; ++j) t.dims.push_back(rd.u64());
    const std::uint64_t count = rd.u64();
    t.data.resize(count);
    rd.bytes(t.data.data(), count * sizeof(double));
    ck.tensors.push_back(std::move(t));
  }
  return ck;
}

}  // namespace quadrl
