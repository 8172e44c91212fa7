#include "wids/model_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "wids/util.hpp"

namespace wids {

namespace {

constexpr char kMagic[8] = {'W', 'I', 'D', 'S', 'M', 'D', 'L', '1'};
constexpr std::uint32_t kFormatVersion = 1;

void put_u32(std::string& buf, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& buf, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f32(std::string& buf, float v) {
  put_u32(buf, std::bit_cast<std::uint32_t>(v));
}

class Cursor {
 public:
  Cursor(const std::string& buf, const std::string& path) : buf_(buf), path_(path) {}

  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
      v |= static_cast<std::uint32_t>(static_cast<unsigned char>(buf_[pos_++])) << (8 * i);
    return v;
  }

  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf_[pos_++])) << (8 * i);
    return v;
  }

  float f32() { return std::bit_cast<float>(u32()); }

  std::size_t pos() const { return pos_; }
  std::size_t remaining() const { return buf_.size() - pos_; }

 private:
  void need(std::size_t n) {
    if (pos_ + n > buf_.size())
      throw IoError("model file '" + path_ + "' is truncated");
  }

  const std::string& buf_;
  const std::string& path_;
  std::size_t pos_ = 0;
};

}  // namespace

void save_model(Network& net, Technique technique, const std::filesystem::path& path) {
  std::string body;
  put_u32(body, kFormatVersion);
  body.push_back(static_cast<char>(net.arch()));
  body.push_back(static_cast<char>(net.task()));
  body.push_back(static_cast<char>(technique));
  body.push_back(0);  // reserved

  const auto params = net.params();
  put_u32(body, static_cast<std::uint32_t>(params.size()));
  for (const auto* p : params) {
    put_u32(body, static_cast<std::uint32_t>(p->rank()));
    for (std::size_t d : p->shape) put_u64(body, d);
    for (float v : p->data) put_f32(body, v);
  }

  std::string out;
  out.reserve(sizeof(kMagic) + body.size() + 8);
  out.append(kMagic, sizeof(kMagic));
  out += body;
  put_u64(out, fnv1a64(body.data(), body.size()));

  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  f.flush();
  if (!f) throw IoError("write error on '" + path.string() + "'");
}

LoadedModel load_model(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path.string() + "' for reading");
  std::string raw((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  if (f.bad()) throw IoError("read error on '" + path.string() + "'");

  const std::string p = path.string();
  if (raw.size() < sizeof(kMagic) + 8 + 8 || std::memcmp(raw.data(), kMagic, sizeof(kMagic)) != 0)
    throw IoError("'" + p + "' is not a model file (bad magic)");

  const std::string body = raw.substr(sizeof(kMagic), raw.size() - sizeof(kMagic) - 8);
  {
    // Verify the trailing checksum before trusting any field.
    std::uint64_t stored = 0;
    for (int i = 0; i < 8; ++i)
      stored |= static_cast<std::uint64_t>(
                    static_cast<unsigned char>(raw[raw.size() - 8 + i]))
                << (8 * i);
    if (stored != fnv1a64(body.data(), body.size()))
      throw IoError("model file '" + p + "' failed its checksum (corrupt or edited)");
  }

  Cursor c(body, p);
  const std::uint32_t version = c.u32();
  if (version != kFormatVersion)
    throw IoError("model file '" + p + "' has unsupported format version " +
                  std::to_string(version));

  // The metadata bytes (arch, task, technique, reserved) form one LE word.
  const std::uint32_t meta_word = c.u32();
  const auto b_arch = static_cast<std::uint8_t>(meta_word & 0xff);
  const auto b_task = static_cast<std::uint8_t>((meta_word >> 8) & 0xff);
  const auto b_technique = static_cast<std::uint8_t>((meta_word >> 16) & 0xff);
  if (b_arch > 3) throw IoError("model file '" + p + "' names an unknown architecture");
  if (b_task > 1) throw IoError("model file '" + p + "' names an unknown task");
  if (b_technique > 4) throw IoError("model file '" + p + "' names an unknown technique");

  ModelMeta m{static_cast<Arch>(b_arch), static_cast<Task>(b_task),
              static_cast<Technique>(b_technique)};

  LoadedModel loaded{m, Network(m.arch, m.task, 0)};
  auto params = loaded.net.params();

  const std::uint32_t count = c.u32();
  if (count != params.size())
    throw IoError("model file '" + p + "' stores " + std::to_string(count) +
                  " tensors but the architecture has " + std::to_string(params.size()));
  for (auto* t : params) {
    const std::uint32_t rank = c.u32();
    if (rank != t->rank())
      throw IoError("model file '" + p + "' tensor rank does not match the architecture");
    for (std::size_t d = 0; d < rank; ++d) {
      if (c.u64() != t->shape[d])
        throw IoError("model file '" + p + "' tensor shape does not match the architecture");
    }
    for (auto& v : t->data) v = c.f32();
  }
  if (c.remaining() != 0)
    throw IoError("model file '" + p + "' has trailing bytes after the last tensor");
  return loaded;
}

}  // namespace wids
