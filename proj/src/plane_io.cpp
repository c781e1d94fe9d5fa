#include "planecycles/plane_io.hpp"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace planecycles {

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error("parse error at " + std::to_string(line) + ":" + std::to_string(column) +
                         ": " + message),
      line_(line),
      column_(column) {}

std::string canonical_text(const Plane& plane) {
  std::ostringstream os;
  os << "plane " << to_string(plane.kind()) << " order " << plane.order() << " points "
     << plane.num_points() << " lines " << plane.num_lines() << '\n';
  if (plane.kind() == PlaneKind::affine) {
    const auto& classes = plane.parallel_classes();
    os << "classes " << classes.size() << '\n';
    for (std::size_t c = 0; c < classes.size(); ++c) {
      os << "class " << c << ':';
      for (LineId l : classes[c]) os << ' ' << l;
      os << '\n';
    }
  }
  for (LineId l = 0; l < plane.num_lines(); ++l) {
    os << "line " << l << ':';
    for (PointId p : plane.points_on(l)) os << ' ' << p;
    os << '\n';
  }
  return os.str();
}

namespace {

struct Token {
  std::string_view text;
  int column;
};

struct Row {
  int number;
  std::vector<Token> tokens;
};

std::vector<Row> tokenize(std::string_view text) {
  std::vector<Row> rows;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Row row{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r')) ++i;
      std::size_t start = i;
      while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t' && raw[i] != '\r') ++i;
      if (i > start) row.tokens.push_back({raw.substr(start, i - start), static_cast<int>(start) + 1});
    }
    if (!row.tokens.empty()) rows.push_back(std::move(row));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return rows;
}

class RowReader {
 public:
  explicit RowReader(const Row& row) : row_(row) {}

  int column() const {
    return index_ < row_.tokens.size() ? row_.tokens[index_].column
                                       : (row_.tokens.empty() ? 1 : row_.tokens.back().column);
  }
  bool done() const { return index_ >= row_.tokens.size(); }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(row_.number, column(), message);
  }

  std::string_view word() {
    if (done()) fail("unexpected end of line");
    return row_.tokens[index_++].text;
  }

  void expect(std::string_view keyword) {
    if (done() || row_.tokens[index_].text != keyword) {
      fail("expected '" + std::string(keyword) + "'");
    }
    ++index_;
  }

  std::int64_t integer() {
    if (done()) fail("expected an integer");
    std::string_view t = row_.tokens[index_].text;
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size() || value < 0) fail("expected a non-negative integer");
    ++index_;
    return value;
  }

  /// "<id>:" or "<id> :".
  std::int64_t labelled_id() {
    if (done()) fail("expected '<id>:'");
    std::string_view t = row_.tokens[index_].text;
    bool colon_attached = !t.empty() && t.back() == ':';
    if (colon_attached) t.remove_suffix(1);
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || value < 0) fail("expected '<id>:'");
    ++index_;
    if (!colon_attached) expect(":");
    return value;
  }

  template <class T>
  std::vector<T> rest_as_ids(std::int64_t bound, const char* what) {
    std::vector<T> out;
    while (!done()) {
      const int col = column();
      std::int64_t v = integer();
      if (v >= bound) {
        throw ParseError(row_.number, col,
                         std::string(what) + " id " + std::to_string(v) + " out of range");
      }
      out.push_back(static_cast<T>(v));
    }
    return out;
  }

 private:
  const Row& row_;
  std::size_t index_ = 0;
};

constexpr std::int64_t kMaxEntities = 1 << 24;

}  // namespace

Plane parse_plane(std::string_view text) {
  const std::vector<Row> rows = tokenize(text);
  if (rows.empty()) throw ParseError(1, 1, "empty plane file");

  RowReader header(rows[0]);
  header.expect("plane");
  const int kind_col = header.column();
  const auto kind = parse_plane_kind(header.word());
  if (!kind) throw ParseError(rows[0].number, kind_col, "unknown plane kind");
  header.expect("order");
  const std::int64_t order = header.integer();
  header.expect("points");
  const std::int64_t num_points = header.integer();
  header.expect("lines");
  const std::int64_t num_lines = header.integer();
  if (!header.done()) header.fail("trailing tokens after header");
  if (order > 65536 || num_points > kMaxEntities || num_lines > kMaxEntities) {
    throw ParseError(rows[0].number, 1, "plane too large");
  }

  std::size_t next = 1;
  std::vector<std::vector<LineId>> classes;
  if (*kind == PlaneKind::affine) {
    if (next >= rows.size()) throw ParseError(rows.back().number, 1, "missing 'classes' row");
    RowReader r(rows[next++]);
    r.expect("classes");
    const std::int64_t count = r.integer();
    if (!r.done()) r.fail("trailing tokens");
    if (count > num_lines) r.fail("more classes than lines");
    classes.resize(static_cast<std::size_t>(count));
    std::vector<bool> seen(static_cast<std::size_t>(count), false);
    for (std::int64_t i = 0; i < count; ++i) {
      if (next >= rows.size()) throw ParseError(rows.back().number, 1, "missing 'class' row");
      RowReader c(rows[next++]);
      c.expect("class");
      const int id_col = c.column();
      const std::int64_t id = c.labelled_id();
      if (id >= count || seen[static_cast<std::size_t>(id)]) {
        throw ParseError(rows[next - 1].number, id_col, "bad or repeated class index");
      }
      seen[static_cast<std::size_t>(id)] = true;
      classes[static_cast<std::size_t>(id)] = c.rest_as_ids<LineId>(num_lines, "line");
    }
  }

  std::vector<std::vector<PointId>> lines(static_cast<std::size_t>(num_lines));
  std::vector<bool> seen(static_cast<std::size_t>(num_lines), false);
  std::int64_t read = 0;
  for (; next < rows.size(); ++next) {
    RowReader r(rows[next]);
    r.expect("line");
    const int id_col = r.column();
    const std::int64_t id = r.labelled_id();
    if (id >= num_lines || seen[static_cast<std::size_t>(id)]) {
      throw ParseError(rows[next].number, id_col, "bad or repeated line id");
    }
    seen[static_cast<std::size_t>(id)] = true;
    lines[static_cast<std::size_t>(id)] = r.rest_as_ids<PointId>(num_points, "point");
    ++read;
  }
  if (read != num_lines) {
    throw ParseError(rows.back().number, 1,
                     "header declares " + std::to_string(num_lines) + " lines, found " +
                         std::to_string(read));
  }

  try {
    return Plane(*kind, static_cast<int>(order), static_cast<int>(num_points), std::move(lines),
                 std::move(classes));
  } catch (const PlaneError& e) {
    throw ParseError(rows[0].number, 1, e.what());
  }
}

Plane read_plane(std::string_view text) {
  Plane plane = parse_plane(text);
  validate_plane(plane);
  return plane;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

Plane load_plane(const std::filesystem::path& path) { return read_plane(read_file(path)); }

void save_plane(const Plane& plane, const std::filesystem::path& path) {
  write_file(path, canonical_text(plane));
}

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[md[i] >> 4]);
    out.push_back(kHex[md[i] & 0xf]);
  }
  return out;
}

}  // namespace planecycles
