#include "orchard/measures.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/core.h>

namespace orchard {

std::string rational_text(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
  Rational r;
  if (text.empty() || r.set_str(text, 10) != 0 || r.get_den() == 0)
    throw Error(ErrorKind::Parse, "bad rational '" + text + "'");
  r.canonicalize();
  return r;
}

double to_double(const Rational& r) { return r.get_d(); }

void write_flattening_csv(std::ostream& out, const std::vector<FlatteningRow>& rows) {
  out << "m,l2_sq,l2_sq_approx,linf,linf_approx,ratio_sq,ratio_sq_approx,support,linf_l2,young,monotone\n";
  for (const auto& r : rows)
    out << fmt::format("{},{},{:.9g},{},{:.9g},{},{:.9g},{},{},{},{}\n", r.m, rational_text(r.l2_sq),
                       to_double(r.l2_sq), rational_text(r.linf), to_double(r.linf), rational_text(r.ratio_sq),
                       to_double(r.ratio_sq), r.support, r.linf_l2, r.young, r.monotone);
}

std::vector<std::pair<std::string, Rational>> read_atoms(std::istream& in) {
  std::vector<std::pair<std::string, Rational>> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string elem, mass, extra;
    if (!(ss >> elem)) continue;
    if (!(ss >> mass) || (ss >> extra))
      throw Error(ErrorKind::Parse, fmt::format("line {}: expected '<element> <num>/<den>'", lineno));
    out.emplace_back(elem, parse_rational(mass));
  }
  return out;
}

}  // namespace orchard
