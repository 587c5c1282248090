#include "effdim/source_spec.hpp"

#include <charconv>
#include <map>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

#include "effdim/codeword.hpp"

namespace effdim {

namespace {

using Params = std::map<std::string, std::string, std::less<>>;

Params split_params(std::string_view body, std::string_view kind) {
  Params out;
  std::size_t i = 0;
  while (i < body.size()) {
    const auto eq = body.find('=', i);
    if (eq == std::string_view::npos) throw std::invalid_argument(fmt::format("{}: expected key=value", kind));
    std::string key(body.substr(i, eq - i));
    std::size_t j = eq + 1;
    std::string value;
    if (j < body.size() && body[j] == '[') {
      int depth = 0;
      std::size_t k = j;
      for (; k < body.size(); ++k) {
        if (body[k] == '[') ++depth;
        if (body[k] == ']' && --depth == 0) break;
      }
      if (k >= body.size()) throw std::invalid_argument(fmt::format("{}: unbalanced brackets", kind));
      value = std::string(body.substr(j + 1, k - j - 1));
      j = k + 1;
    } else {
      const auto comma = body.find(',', j);
      const std::size_t end = comma == std::string_view::npos ? body.size() : comma;
      value = std::string(body.substr(j, end - j));
      j = end;
    }
    if (j < body.size()) {
      if (body[j] != ',') throw std::invalid_argument(fmt::format("{}: expected ',' after {}", kind, key));
      ++j;
    }
    if (!out.emplace(key, value).second) throw std::invalid_argument(fmt::format("{}: duplicate key {}", kind, key));
    i = j;
  }
  return out;
}

class Reader {
 public:
  Reader(std::string_view kind, Params params) : kind_(kind), params_(std::move(params)) {}

  std::string take(std::string_view key) {
    const auto it = params_.find(key);
    if (it == params_.end()) throw std::invalid_argument(fmt::format("{}: missing {}", kind_, key));
    std::string value = it->second;
    params_.erase(it);
    return value;
  }
  std::string take_or(std::string_view key, std::string fallback) {
    return params_.count(key) ? take(key) : std::move(fallback);
  }
  std::uint64_t take_u64(std::string_view key) {
    const std::string text = take(key);
    std::uint64_t value = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size() || text.empty()) {
      throw std::invalid_argument(fmt::format("{}: {} must be an unsigned integer", kind_, key));
    }
    return value;
  }
  double take_double(std::string_view key) {
    const std::string text = take(key);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size() || text.empty()) {
      throw std::invalid_argument(fmt::format("{}: {} must be a number", kind_, key));
    }
    return value;
  }
  SourcePtr take_source(std::string_view key) { return parse_source(take(key)); }

  void done() const {
    if (!params_.empty()) {
      throw std::invalid_argument(fmt::format("{}: unknown key {}", kind_, params_.begin()->first));
    }
  }

 private:
  std::string_view kind_;
  Params params_;
};

}  // namespace

SourcePtr parse_source(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument(fmt::format("source '{}' lacks 'kind:'", text));
  const std::string_view kind = text.substr(0, colon);
  Reader in(kind, split_params(text.substr(colon + 1), kind));
  SourcePtr out;
  if (kind == "const") {
    const std::uint64_t v = in.take_u64("value");
    if (v > 1) throw std::invalid_argument("const: value must be 0 or 1");
    out = make_const(v == 1);
  } else if (kind == "uniform") {
    out = make_uniform(in.take_u64("seed"));
  } else if (kind == "bernoulli") {
    const double p = in.take_double("p");
    const std::uint64_t seed = in.take_u64("seed");
    out = make_bernoulli(p, seed, in.take_or("role", "bernoulli"));
  } else if (kind == "dyadic") {
    out = make_dyadic(Rational::parse(in.take("r")));
  } else if (kind == "mix") {
    const Rational r = Rational::parse(in.take("r"));
    SourcePtr a = in.take_source("src0");
    SourcePtr b = in.take_source("src1");
    out = make_mix(std::move(a), std::move(b), r);
  } else if (kind == "thin") {
    SourcePtr y = in.take_source("y");
    SourcePtr b = in.take_source("b");
    out = thin_by(std::move(y), std::move(b));
  } else if (kind == "xor") {
    SourcePtr a = in.take_source("a");
    SourcePtr b = in.take_source("b");
    out = make_xor(std::move(a), std::move(b));
  } else if (kind == "codeword") {
    CodewordSpec spec;
    spec.s = in.take_double("s");
    spec.chunk_cap = in.take_u64("nmax");
    spec.base = in.take_source("base");
    out = codeword_source(std::move(spec));
  } else {
    throw std::invalid_argument(fmt::format("unknown source kind '{}'", kind));
  }
  in.done();
  return out;
}

}  // namespace effdim
