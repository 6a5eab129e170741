#include "trm/parse.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace trm {

namespace {

// Reads a decimal number at pos (optional sign); returns false if none.
bool read_number(const std::string& s, std::size_t& pos, double& out) {
  if (pos >= s.size()) return false;
  std::size_t start = pos;
  std::size_t p = pos;
  if (s[p] == '+' || s[p] == '-') ++p;
  const char* first = s.data() + p;
  const char* last = s.data() + s.size();
  double mag = 0.0;
  auto res = std::from_chars(first, last, mag);
  if (res.ec != std::errc() || res.ptr == first) return false;
  if (!std::isfinite(mag)) return false;  // "inf"/"nan" are not numbers here
  out = (s[start] == '-') ? -mag : mag;
  pos = static_cast<std::size_t>(res.ptr - s.data());
  return true;
}

}  // namespace

cplx parse_complex(const std::string& text) {
  const std::string& s = text;
  if (s.empty()) throw ParseError("empty complex literal");
  std::size_t pos = 0;
  double first = 0.0;

  // pure "i", "+i", "-i"
  auto sign_i = [&](std::size_t p) -> bool {
    std::size_t q = p;
    double sign = 1.0;
    if (q < s.size() && (s[q] == '+' || s[q] == '-')) {
      sign = (s[q] == '-') ? -1.0 : 1.0;
      ++q;
    }
    if (q + 1 == s.size() && s[q] == 'i') {
      first = sign;
      return true;
    }
    return false;
  };

  if (sign_i(0)) return cplx(0.0, first);

  if (!read_number(s, pos, first))
    throw ParseError("malformed complex literal: '" + text + "'");
  if (pos == s.size()) return cplx(first, 0.0);  // pure real
  if (s[pos] == 'i') {
    if (pos + 1 != s.size())
      throw ParseError("malformed complex literal: '" + text + "'");
    return cplx(0.0, first);  // pure imaginary
  }
  if (s[pos] != '+' && s[pos] != '-')
    throw ParseError("malformed complex literal: '" + text + "'");

  // signed imaginary tail: number + 'i', or bare sign + 'i'
  double imag = 0.0;
  std::size_t tail = pos;
  if (read_number(s, tail, imag)) {
    if (tail + 1 == s.size() && s[tail] == 'i') return cplx(first, imag);
    throw ParseError("malformed complex literal: '" + text + "'");
  }
  std::size_t q = pos;
  double sign = (s[q] == '-') ? -1.0 : 1.0;
  ++q;
  if (q + 1 == s.size() && s[q] == 'i') return cplx(first, sign);
  throw ParseError("malformed complex literal: '" + text + "'");
}

HPoint parse_hpoint(const std::string& text) {
  const cplx z = parse_complex(text);
  return HPoint(z);  // domain check happens in the constructor
}

BoundaryPoint parse_boundary(const std::string& text) {
  if (text == "inf") return BoundaryPoint::infinity();
  std::size_t pos = 0;
  double x = 0.0;
  if (!read_number(text, pos, x) || pos != text.size())
    throw ParseError("malformed boundary point: '" + text + "'");
  return BoundaryPoint::at(x);
}

FoliationVec parse_foliation(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw ParseError("malformed foliation (expected 'a,b'): '" + text + "'");
  std::size_t p1 = 0, p2 = 0;
  double a = 0.0, b = 0.0;
  const std::string sa = text.substr(0, comma), sb = text.substr(comma + 1);
  if (!read_number(sa, p1, a) || p1 != sa.size() || !read_number(sb, p2, b) ||
      p2 != sb.size())
    throw ParseError("malformed foliation (expected 'a,b'): '" + text + "'");
  return FoliationVec(a, b);  // rejects (0, 0) as a domain error
}

std::vector<cplx> parse_complex_list(const std::string& text) {
  std::vector<cplx> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string item = (comma == std::string::npos)
                                 ? text.substr(start)
                                 : text.substr(start, comma - start);
    out.push_back(parse_complex(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string format_complex(cplx z) {
  std::ostringstream out;
  out.precision(17);
  out << z.real();
  if (z.imag() >= 0 || std::isnan(z.imag())) out << '+';
  out << z.imag() << 'i';
  return out.str();
}

ModelSpace load_model_space(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open model-space file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("model-space file: invalid JSON: ") + e.what());
  }
  try {
    const int nx = j.at("grid").at("nx").get<int>();
    const int ny = j.at("grid").at("ny").get<int>();
    std::vector<BasisTerm> basis;
    for (const auto& spec : j.at("basis"))
      basis.push_back(BasisTerm::parse(spec.get<std::string>()));
    const std::uint64_t seed = j.value("seed", 0ull);
    return ModelSpace(nx, ny, std::move(basis), seed);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("model-space file: missing field: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("model-space file: ") + e.what());
  }
}

std::string model_space_json(const ModelSpace& s) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["grid"] = {{"nx", s.nx()}, {"ny", s.ny()}};
  std::vector<std::string> basis;
  for (const auto& b : s.basis()) basis.push_back(b.str());
  j["basis"] = basis;
  j["seed"] = s.seed();
  return j.dump(2);
}

}  // namespace trm
