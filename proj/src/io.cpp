#include "qnlab/io.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "qnlab/particles.hpp"

namespace qnlab {
namespace {

namespace fs = std::filesystem;

constexpr char kFieldMagic[4] = {'Q', 'N', 'L', '1'};
constexpr char kParticleMagic[4] = {'Q', 'N', 'P', '1'};

void ensure_parent(const fs::path& p) {
  if (p.has_parent_path() && !p.parent_path().empty()) {
    std::error_code ec;
    fs::create_directories(p.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + p.parent_path().string());
  }
}

void atomic_write_bytes(const std::string& path, const void* data,
                        std::size_t size,
                        const void* data2 = nullptr, std::size_t size2 = 0) {
  fs::path target(path);
  ensure_parent(target);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(static_cast<const char*>(data), size);
    if (data2) out.write(static_cast<const char*>(data2), size2);
    if (!out) throw IoError("write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw IoError("rename failed: " + target.string());
}

struct FieldHeader {
  char magic[4];
  std::uint32_t pad = 0;
  std::uint64_t n;
  std::uint64_t kind;
};
static_assert(sizeof(FieldHeader) == 24);

std::vector<char> read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  return bytes;
}

FieldHeader parse_field_header(const std::vector<char>& bytes,
                               const std::string& path) {
  FieldHeader hdr;
  if (bytes.size() < sizeof(hdr)) throw IoError("truncated field file " + path);
  std::memcpy(&hdr, bytes.data(), sizeof(hdr));
  if (std::memcmp(hdr.magic, kFieldMagic, 4) != 0)
    throw IoError("bad magic in " + path);
  return hdr;
}

void write_field_impl(const std::string& path, FieldKind kind, int n,
                      const std::vector<const ScalarField*>& parts) {
  FieldHeader hdr{};
  std::memcpy(hdr.magic, kFieldMagic, 4);
  hdr.n = static_cast<std::uint64_t>(n);
  hdr.kind = static_cast<std::uint64_t>(kind);
  std::vector<double> payload;
  payload.reserve(parts.size() * parts[0]->size());
  for (const ScalarField* f : parts)
    payload.insert(payload.end(), f->v.begin(), f->v.end());
  atomic_write_bytes(path, &hdr, sizeof(hdr), payload.data(),
                     payload.size() * sizeof(double));
}

}  // namespace

void write_field(const std::string& path, const ScalarField& f) {
  write_field_impl(path, FieldKind::scalar, f.grid.n, {&f});
}

void write_field(const std::string& path, const VectorField& f) {
  write_field_impl(path, FieldKind::vector, f.grid().n, {&f.c1, &f.c2});
}

ScalarField read_scalar_field(const std::string& path) {
  auto bytes = read_bytes(path);
  FieldHeader hdr = parse_field_header(bytes, path);
  if (hdr.kind != static_cast<std::uint64_t>(FieldKind::scalar))
    throw IoError("field kind mismatch in " + path);
  TorusGrid grid(static_cast<int>(hdr.n));
  ScalarField out(grid);
  if (bytes.size() != sizeof(hdr) + out.size() * sizeof(double))
    throw IoError("size mismatch in " + path);
  std::memcpy(out.v.data(), bytes.data() + sizeof(hdr),
              out.size() * sizeof(double));
  return out;
}

VectorField read_vector_field(const std::string& path) {
  auto bytes = read_bytes(path);
  FieldHeader hdr = parse_field_header(bytes, path);
  if (hdr.kind != static_cast<std::uint64_t>(FieldKind::vector))
    throw IoError("field kind mismatch in " + path);
  TorusGrid grid(static_cast<int>(hdr.n));
  VectorField out(grid);
  std::size_t each = out.c1.size() * sizeof(double);
  if (bytes.size() != sizeof(hdr) + 2 * each)
    throw IoError("size mismatch in " + path);
  std::memcpy(out.c1.v.data(), bytes.data() + sizeof(hdr), each);
  std::memcpy(out.c2.v.data(), bytes.data() + sizeof(hdr) + each, each);
  return out;
}

void write_ensemble(const std::string& path, const ParticleEnsemble& ens) {
  const std::uint64_t count = ens.size();
  std::vector<char> blob(sizeof(kParticleMagic) + sizeof(count) +
                         count * 7 * sizeof(double));
  char* p = blob.data();
  std::memcpy(p, kParticleMagic, 4);
  p += 4;
  std::memcpy(p, &count, sizeof(count));
  p += sizeof(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const double rec[7] = {ens.x1[i], ens.x2[i],   ens.v1[i],  ens.v2[i],
                           ens.w[i],  ens.v1_0[i], ens.v2_0[i]};
    std::memcpy(p, rec, sizeof(rec));
    p += sizeof(rec);
  }
  atomic_write_bytes(path, blob.data(), blob.size());
}

ParticleEnsemble read_ensemble(const std::string& path) {
  auto bytes = read_bytes(path);
  if (bytes.size() < 12 || std::memcmp(bytes.data(), kParticleMagic, 4) != 0)
    throw IoError("bad magic in " + path);
  std::uint64_t count;
  std::memcpy(&count, bytes.data() + 4, sizeof(count));
  if (bytes.size() != 12 + count * 7 * sizeof(double))
    throw IoError("size mismatch in " + path);
  ParticleEnsemble ens;
  ens.resize(count);
  const char* p = bytes.data() + 12;
  for (std::uint64_t i = 0; i < count; ++i) {
    double rec[7];
    std::memcpy(rec, p, sizeof(rec));
    p += sizeof(rec);
    ens.x1[i] = rec[0];
    ens.x2[i] = rec[1];
    ens.v1[i] = rec[2];
    ens.v2[i] = rec[3];
    ens.w[i] = rec[4];
    ens.v1_0[i] = rec[5];
    ens.v2_0[i] = rec[6];
  }
  return ens;
}

std::string format_double(double x) {
  std::array<char, 40> buf;
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

void write_text(const std::string& path, const std::string& content) {
  atomic_write_bytes(path, content.data(), content.size());
}

std::string read_text(const std::string& path) {
  auto bytes = read_bytes(path);
  return std::string(bytes.begin(), bytes.end());
}

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace qnlab
