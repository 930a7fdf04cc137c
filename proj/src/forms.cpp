#include "hlc/forms.hpp"

#include <charconv>
#include <stdexcept>

#include "hlc/number_theory.hpp"

namespace hlc {

namespace {

int64_t parse_int(std::string_view text, std::string_view whole) {
  int64_t v = 0;
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("malformed form '" + std::string(whole) + "': bad integer '" +
                                std::string(text) + "'");
  }
  return v;
}

}  // namespace

FieldSpec FieldSpec::complex(int64_t disc) {
  if (disc >= 0 || !is_fundamental_discriminant(disc)) {
    throw std::invalid_argument("not a negative fundamental discriminant: " + std::to_string(disc));
  }
  return {FieldKind::Complex, disc};
}

OrderBasis::OrderBasis(int64_t d) : disc(d) {
  if (d >= 0 || !is_fundamental_discriminant(d)) {
    throw std::invalid_argument("not a negative fundamental discriminant: " + std::to_string(d));
  }
  if (((d % 4) + 4) % 4 == 0) {
    omega_kind = OmegaKind::SqrtHalfDisc;
    A = 1;
    B = 0;
    C = -d / 4;
  } else {
    omega_kind = OmegaKind::OnePlusSqrtOverTwo;
    A = 1;
    B = 1;
    C = (1 - d) / 4;
  }
}

Integer FormSpec::positive_product() const {
  Integer p = 1;
  for (int64_t x : positive_part) p *= to_integer(x);
  return p;
}

std::vector<int64_t> FormSpec::diagonal() const {
  std::vector<int64_t> d = positive_part;
  d.push_back(-a);
  return d;
}

void FormSpec::validate() const {
  if (n() < 2) throw std::invalid_argument("form needs at least two positive entries");
  for (int64_t x : positive_part) {
    if (x <= 0) throw std::invalid_argument("positive part entries must be > 0");
  }
  if (a <= 0) throw std::invalid_argument("a must be positive");
  if (field.is_complex()) {
    (void)FieldSpec::complex(field.disc);
  } else if (field.disc != 0) {
    throw std::invalid_argument("real forms carry no discriminant");
  }
}

FormSpec parse_form(std::string_view text) {
  FormSpec f;
  std::string_view body = text;
  const auto at = text.find('@');
  if (at != std::string_view::npos) {
    body = text.substr(0, at);
    const std::string_view suffix = text.substr(at + 1);
    if (suffix == "R") {
      f.field = FieldSpec::real();
    } else if (suffix.starts_with("C:")) {
      f.field = FieldSpec::complex(parse_int(suffix.substr(2), text));
    } else {
      throw std::invalid_argument("malformed form '" + std::string(text) + "': unknown field suffix");
    }
  }
  const auto semi = body.find(';');
  if (semi == std::string_view::npos) {
    throw std::invalid_argument("malformed form '" + std::string(text) + "': missing ';a'");
  }
  std::string_view list = body.substr(0, semi);
  f.a = parse_int(body.substr(semi + 1), text);
  while (true) {
    const auto comma = list.find(',');
    f.positive_part.push_back(parse_int(list.substr(0, comma), text));
    if (comma == std::string_view::npos) break;
    list.remove_prefix(comma + 1);
  }
  f.validate();
  return f;
}

std::string serialize_form(const FormSpec& form) {
  std::string out;
  for (size_t i = 0; i < form.positive_part.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(form.positive_part[i]);
  }
  out += ';' + std::to_string(form.a);
  if (form.field.is_complex()) {
    out += "@C:" + std::to_string(form.field.disc);
  } else {
    out += "@R";
  }
  return out;
}

FormSpec identity_form(int n, int64_t a, const FieldSpec& field) {
  FormSpec f;
  f.field = field;
  f.positive_part.assign(static_cast<size_t>(n), 1);
  f.a = a;
  f.validate();
  return f;
}

}  // namespace hlc
