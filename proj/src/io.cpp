#include "m2q/io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <vector>

#include "m2q/errors.hpp"

namespace m2q::io {
namespace {

constexpr std::array<char, 4> kMagic = {'M', '2', 'Q', 'B'};
constexpr std::uint32_t kVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "binary format I/O assumes a little-endian host");

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

double parse_double(std::string_view field, std::size_t line) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (field.empty() || ec != std::errc() || ptr != last) {
    throw ParseError("line " + std::to_string(line) + ": cannot parse '" +
                     std::string(field) + "' as a number");
  }
  return value;
}

// Parses "# n=<n> d=<d>"; returns false if the comment is something else.
bool parse_shape_header(std::string_view line, long long& n, long long& d) {
  std::istringstream ss{std::string(line.substr(1))};
  std::string a, b;
  ss >> a >> b;
  if (a.rfind("n=", 0) != 0 || b.rfind("d=", 0) != 0) return false;
  try {
    n = std::stoll(a.substr(2));
    d = std::stoll(b.substr(2));
  } catch (const std::exception&) {
    throw ParseError("malformed shape header: " + std::string(line));
  }
  return true;
}

template <typename T>
void write_le(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_le(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw ParseError("binary matrix: truncated header");
  return value;
}

}  // namespace

Format format_from_path(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  return (ext == ".m2qb" || ext == ".bin") ? Format::binary : Format::csv;
}

DataMatrix read_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  long long declared_n = -1, declared_d = -1;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      if (rows.empty() && declared_n < 0) parse_shape_header(t, declared_n, declared_d);
      continue;
    }
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      const auto comma = t.find(',', start);
      row.push_back(parse_double(t.substr(start, comma - start), line_no));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError("line " + std::to_string(line_no) + ": ragged row (" +
                       std::to_string(row.size()) + " fields, expected " +
                       std::to_string(rows.front().size()) + ")");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("CSV matrix has no rows");
  if (declared_n >= 0 &&
      (declared_n != static_cast<long long>(rows.size()) ||
       declared_d != static_cast<long long>(rows.front().size()))) {
    throw ParseError("CSV shape header does not match the data");
  }
  try {
    return DataMatrix::from_rows(rows);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

void write_csv(std::ostream& out, const DataMatrix& x) {
  out << "# n=" << x.rows() << " d=" << x.cols() << '\n';
  std::array<char, 32> buf{};
  for (Index i = 0; i < x.rows(); ++i) {
    for (Index j = 0; j < x.cols(); ++j) {
      if (j > 0) out << ',';
      // Shortest representation that round-trips exactly.
      const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(),
                                           x.entries()(i, j));
      out.write(buf.data(), ptr - buf.data());
    }
    out << '\n';
  }
}

DataMatrix read_binary(std::istream& in) {
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw ParseError("binary matrix: bad magic");
  const auto version = read_le<std::uint32_t>(in);
  if (version != kVersion) {
    throw ParseError("binary matrix: unsupported version " + std::to_string(version));
  }
  const auto n = read_le<std::uint64_t>(in);
  const auto d = read_le<std::uint64_t>(in);
  if (n == 0 || d == 0) throw ParseError("binary matrix: empty shape");
  if (n > (std::uint64_t{1} << 40) / d) throw ParseError("binary matrix: shape too large");
  RowMatrix m(static_cast<Index>(n), static_cast<Index>(d));
  in.read(reinterpret_cast<char*>(m.data()),
          static_cast<std::streamsize>(n * d * sizeof(double)));
  if (!in) throw ParseError("binary matrix: truncated payload");
  try {
    return DataMatrix(std::move(m));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

void write_binary(std::ostream& out, const DataMatrix& x) {
  out.write(kMagic.data(), kMagic.size());
  write_le<std::uint32_t>(out, kVersion);
  write_le<std::uint64_t>(out, static_cast<std::uint64_t>(x.rows()));
  write_le<std::uint64_t>(out, static_cast<std::uint64_t>(x.cols()));
  out.write(reinterpret_cast<const char*>(x.entries().data()),
            static_cast<std::streamsize>(x.entries().size() * sizeof(double)));
}

DataMatrix read_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::array<char, 4> head{};
  in.read(head.data(), head.size());
  const bool binary = in.gcount() == 4 && head == kMagic;
  in.clear();
  in.seekg(0);
  return binary ? read_binary(in) : read_csv(in);
}

void write_matrix(const std::filesystem::path& path, const DataMatrix& x) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  if (format_from_path(path) == Format::binary) {
    write_binary(out, x);
  } else {
    write_csv(out, x);
  }
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::uint64_t checksum(const DataMatrix& x) {
  std::ostringstream buf;
  write_binary(buf, x);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : buf.str()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace m2q::io
