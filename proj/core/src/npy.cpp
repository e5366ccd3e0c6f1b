#include "dtfc/npy.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

namespace dtfc {

namespace {

constexpr char kMagic[6] = {'\x93', 'N', 'U', 'M', 'P', 'Y'};

std::string stem_of(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

void skip_spaces(const std::string& s, std::size_t& pos) {
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
}

bool consume(const std::string& s, std::size_t& pos, const std::string& token) {
  skip_spaces(s, pos);
  if (s.compare(pos, token.size(), token) == 0) {
    pos += token.size();
    return true;
  }
  return false;
}

std::string parse_quoted(const std::string& s, std::size_t& pos) {
  skip_spaces(s, pos);
  if (pos >= s.size() || (s[pos] != '\'' && s[pos] != '"')) {
    fail(ErrorKind::FormatError, "npy header: expected quoted string");
  }
  const char quote = s[pos++];
  std::string out;
  while (pos < s.size() && s[pos] != quote) out.push_back(s[pos++]);
  if (pos >= s.size()) fail(ErrorKind::FormatError, "npy header: unterminated string");
  ++pos;
  return out;
}

std::uint64_t parse_uint(const std::string& s, std::size_t& pos) {
  skip_spaces(s, pos);
  if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) {
    fail(ErrorKind::FormatError, "npy header: expected integer");
  }
  std::uint64_t v = 0;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
    v = v * 10 + static_cast<std::uint64_t>(s[pos] - '0');
    ++pos;
  }
  return v;
}

struct Header {
  std::string descr;
  bool fortran_order = false;
  std::vector<std::size_t> shape;
};

// Parses the python dict literal written by numpy:
//   {'descr': '<f4', 'fortran_order': False, 'shape': (2, 3), }
Header parse_header(const std::string& text) {
  Header h;
  std::size_t pos = 0;
  if (!consume(text, pos, "{")) fail(ErrorKind::FormatError, "npy header: expected '{'");
  bool saw_descr = false, saw_order = false, saw_shape = false;
  while (true) {
    skip_spaces(text, pos);
    if (pos < text.size() && text[pos] == '}') break;
    const std::string key = parse_quoted(text, pos);
    if (!consume(text, pos, ":")) fail(ErrorKind::FormatError, "npy header: expected ':'");
    if (key == "descr") {
      h.descr = parse_quoted(text, pos);
      saw_descr = true;
    } else if (key == "fortran_order") {
      if (consume(text, pos, "False")) {
        h.fortran_order = false;
      } else if (consume(text, pos, "True")) {
        h.fortran_order = true;
      } else {
        fail(ErrorKind::FormatError, "npy header: bad fortran_order");
      }
      saw_order = true;
    } else if (key == "shape") {
      if (!consume(text, pos, "(")) fail(ErrorKind::FormatError, "npy header: expected '('");
      while (true) {
        skip_spaces(text, pos);
        if (pos < text.size() && text[pos] == ')') {
          ++pos;
          break;
        }
        h.shape.push_back(static_cast<std::size_t>(parse_uint(text, pos)));
        skip_spaces(text, pos);
        if (pos < text.size() && text[pos] == ',') ++pos;
      }
      saw_shape = true;
    } else {
      fail(ErrorKind::FormatError, "npy header: unknown key '" + key + "'");
    }
    skip_spaces(text, pos);
    if (pos < text.size() && text[pos] == ',') ++pos;
  }
  if (!saw_descr || !saw_order || !saw_shape) {
    fail(ErrorKind::FormatError, "npy header: missing required key");
  }
  return h;
}

}  // namespace

FeatureTensor load_npy(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::IoError, "cannot open '" + path + "'");

  char magic[6];
  if (!in.read(magic, 6) || std::memcmp(magic, kMagic, 6) != 0) {
    fail(ErrorKind::FormatError, "bad npy magic");
  }
  unsigned char version[2];
  if (!in.read(reinterpret_cast<char*>(version), 2)) {
    fail(ErrorKind::FormatError, "truncated npy preamble");
  }
  if (version[0] != 1 || version[1] != 0) {
    fail(ErrorKind::FormatError, "unsupported npy version");
  }
  unsigned char len_bytes[2];
  if (!in.read(reinterpret_cast<char*>(len_bytes), 2)) {
    fail(ErrorKind::FormatError, "truncated npy preamble");
  }
  const std::size_t header_len =
      static_cast<std::size_t>(len_bytes[0]) | (static_cast<std::size_t>(len_bytes[1]) << 8);
  std::string header_text(header_len, '\0');
  if (!in.read(header_text.data(), static_cast<std::streamsize>(header_len))) {
    fail(ErrorKind::FormatError, "truncated npy header");
  }

  const Header h = parse_header(header_text);
  if (h.descr != "<f4") {
    fail(ErrorKind::FormatError, "unsupported dtype '" + h.descr + "' (need <f4)");
  }
  if (h.fortran_order) fail(ErrorKind::FormatError, "fortran order not supported");
  if (h.shape.empty() || h.shape.size() > 4) {
    fail(ErrorKind::FormatError, "unsupported rank (need 1-4 dims)");
  }
  std::size_t count = 1;
  for (std::size_t d : h.shape) {
    if (d == 0) fail(ErrorKind::FormatError, "zero-sized dimension");
    count *= d;
  }

  std::vector<float> raw(count);
  if (!in.read(reinterpret_cast<char*>(raw.data()),
               static_cast<std::streamsize>(count * sizeof(float)))) {
    fail(ErrorKind::FormatError, "truncated npy payload");
  }

  FeatureTensor t;
  t.shape = h.shape;
  t.values.reserve(count);
  for (float v : raw) {
    if (!std::isfinite(v)) fail(ErrorKind::DataError, "non-finite value in '" + path + "'");
    t.values.push_back(static_cast<double>(v));
  }
  t.source_tag = stem_of(path);
  return t;
}

void save_npy(const FeatureTensor& tensor, const std::string& path) {
  tensor.validate();

  std::ostringstream dict;
  dict << "{'descr': '<f4', 'fortran_order': False, 'shape': (";
  for (std::size_t i = 0; i < tensor.shape.size(); ++i) {
    dict << tensor.shape[i];
    if (tensor.shape.size() == 1 || i + 1 < tensor.shape.size()) dict << ",";
    if (i + 1 < tensor.shape.size()) dict << " ";
  }
  dict << "), }";
  std::string header = dict.str();

  // Pad with spaces so the whole preamble (magic + version + len + header)
  // is a multiple of 64 bytes, newline-terminated.
  const std::size_t preamble = 6 + 2 + 2;
  std::size_t total = preamble + header.size() + 1;
  const std::size_t padded = (total + 63) / 64 * 64;
  header.append(padded - total, ' ');
  header.push_back('\n');

  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::IoError, "cannot write '" + path + "'");
  out.write(kMagic, 6);
  const unsigned char version[2] = {1, 0};
  out.write(reinterpret_cast<const char*>(version), 2);
  const std::size_t hlen = header.size();
  const unsigned char len_bytes[2] = {static_cast<unsigned char>(hlen & 0xFF),
                                      static_cast<unsigned char>((hlen >> 8) & 0xFF)};
  out.write(reinterpret_cast<const char*>(len_bytes), 2);
  out.write(header.data(), static_cast<std::streamsize>(header.size()));

  std::vector<float> raw;
  raw.reserve(tensor.values.size());
  for (double v : tensor.values) raw.push_back(static_cast<float>(v));
  out.write(reinterpret_cast<const char*>(raw.data()),
            static_cast<std::streamsize>(raw.size() * sizeof(float)));
  if (!out) fail(ErrorKind::IoError, "write failed for '" + path + "'");
}

}  // namespace dtfc
