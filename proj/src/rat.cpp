#include <jb/rat.hpp>

#include <cctype>
#include <stdexcept>

namespace jb {

namespace {

bool is_integer_token(const std::string& s, size_t from, size_t to, bool allow_sign) {
  if (from >= to) return false;
  size_t i = from;
  if (allow_sign && s[i] == '-') ++i;
  if (i >= to) return false;
  for (; i < to; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rat rat_parse(const std::string& s) {
  size_t slash = s.find('/');
  if (slash == std::string::npos) {
    if (!is_integer_token(s, 0, s.size(), true)) {
      throw std::invalid_argument("not a rational: \"" + s + "\"");
    }
    return Rat(Int(s));
  }
  if (!is_integer_token(s, 0, slash, true) ||
      !is_integer_token(s, slash + 1, s.size(), false)) {
    throw std::invalid_argument("not a rational: \"" + s + "\"");
  }
  Int num(s.substr(0, slash));
  Int den(s.substr(slash + 1));
  if (den == 0) {
    throw std::invalid_argument("zero denominator: \"" + s + "\"");
  }
  Rat r(num, den);
  r.canonicalize();
  return r;
}

std::string rat_str(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rat binom(long a, long b) {
  if (b < 0) return Rat(0);
  Rat acc(1);
  for (long i = 0; i < b; ++i) {
    acc *= Rat(a - i);
    acc /= Rat(i + 1);
  }
  return acc;
}

}  // namespace jb
