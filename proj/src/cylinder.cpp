#include "esamp/cylinder.hpp"

#include <sstream>
#include <stdexcept>

namespace esamp {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

std::string word_key(const FiniteSpace& alphabet, const Word& w) {
  std::string out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) out += ',';
    out += alphabet.name_of(w[i]);
  }
  return out;
}

}  // namespace

CylinderState::CylinderState(FiniteSpace alphabet, int length, Pmf pmf)
    : alphabet_(std::move(alphabet)), length_(length), pmf_(std::move(pmf)) {
  require(length_ >= 0, "CylinderState: negative length");
  Rational sum = 0;
  for (auto it = pmf_.begin(); it != pmf_.end();) {
    const auto& [w, p] = *it;
    require(static_cast<int>(w.size()) == length_, "CylinderState: word length mismatch");
    for (int c : w)
      require(c >= 0 && c < alphabet_.size(), "CylinderState: symbol out of range");
    require(p >= 0, "CylinderState: negative mass");
    sum += p;
    if (p == 0) it = pmf_.erase(it); else ++it;
  }
  require(sum == 1, "CylinderState: masses must sum to exactly 1");
}

CylinderState CylinderState::point_mass(FiniteSpace alphabet, Word w) {
  Pmf pmf;
  int n = static_cast<int>(w.size());
  pmf.emplace(std::move(w), Rational(1));
  return CylinderState(std::move(alphabet), n, std::move(pmf));
}

Rational CylinderState::mass(const Word& w) const {
  auto it = pmf_.find(w);
  return it == pmf_.end() ? Rational(0) : it->second;
}

CylinderState marginal(const CylinderState& s, int k) {
  require(k >= 0 && k <= s.length(), "marginal: bad prefix length");
  CylinderState::Pmf out;
  for (const auto& [w, p] : s.pmf()) {
    Word prefix(w.begin(), w.begin() + k);
    out[prefix] += p;
  }
  return CylinderState(s.alphabet(), k, std::move(out));
}

CylinderState permute(const CylinderState& s, const FinitePermutation& sigma) {
  require(sigma.size() == s.length(), "permute: permutation size mismatch");
  CylinderState::Pmf out;
  for (const auto& [v, p] : s.pmf()) {
    Word w(v.size());
    for (int j = 0; j < sigma.size(); ++j)
      w[static_cast<size_t>(j)] = v[static_cast<size_t>(sigma(j))];
    out[w] += p;
  }
  return CylinderState(s.alphabet(), s.length(), std::move(out));
}

CylinderState iid_truncation(const FiniteSpace& alphabet,
                             const std::vector<Rational>& p, int n) {
  require(static_cast<int>(p.size()) == alphabet.size(),
          "iid_truncation: pmf size mismatch");
  require(n >= 0, "iid_truncation: negative length");
  Rational sum = 0;
  for (const Rational& q : p) {
    require(q >= 0, "iid_truncation: negative mass");
    sum += q;
  }
  require(sum == 1, "iid_truncation: pmf must sum to 1");

  CylinderState::Pmf out;
  Word w;
  // Depth-first over nonzero letters only: the support stays sparse.
  struct Rec {
    const FiniteSpace& alphabet;
    const std::vector<Rational>& p;
    int n;
    CylinderState::Pmf& out;
    Word& w;
    void go(const Rational& acc) {
      if (static_cast<int>(w.size()) == n) {
        out.emplace(w, acc);
        return;
      }
      for (int c = 0; c < alphabet.size(); ++c) {
        const Rational& q = p[static_cast<size_t>(c)];
        if (q == 0) continue;
        w.push_back(c);
        go(acc * q);
        w.pop_back();
      }
    }
  } rec{alphabet, p, n, out, w};
  rec.go(Rational(1));
  return CylinderState(alphabet, n, std::move(out));
}

MixtureModel::MixtureModel(FiniteSpace alphabet_, std::vector<Rational> weights_,
                           std::vector<std::vector<Rational>> components_)
    : alphabet(std::move(alphabet_)),
      weights(std::move(weights_)),
      components(std::move(components_)) {
  require(weights.size() == components.size(),
          "MixtureModel: one weight per component");
  require(!components.empty(), "MixtureModel: empty mixture");
  Rational wsum = 0;
  for (const Rational& w : weights) {
    require(w >= 0, "MixtureModel: negative weight");
    wsum += w;
  }
  require(wsum == 1, "MixtureModel: weights must sum to 1");
  for (const auto& q : components) {
    require(static_cast<int>(q.size()) == alphabet.size(),
            "MixtureModel: component size mismatch");
    Rational s = 0;
    for (const Rational& v : q) {
      require(v >= 0, "MixtureModel: negative component mass");
      s += v;
    }
    require(s == 1, "MixtureModel: component must sum to 1");
  }
}

bool MixtureModel::all_point_masses() const {
  for (const auto& q : components) {
    for (const Rational& v : q)
      if (v != 0 && v != 1) return false;
  }
  return true;
}

MixtureModel MixtureModel::from_json(const nlohmann::json& j) {
  int k = j.at("alphabet").get<int>();
  std::vector<Rational> weights;
  for (const auto& w : j.at("weights")) weights.push_back(parse_rational(w.get<std::string>()));
  std::vector<std::vector<Rational>> comps;
  for (const auto& row : j.at("components")) {
    std::vector<Rational> q;
    for (const auto& v : row) q.push_back(parse_rational(v.get<std::string>()));
    comps.push_back(std::move(q));
  }
  return MixtureModel(FiniteSpace("X", k), std::move(weights), std::move(comps));
}

nlohmann::ordered_json MixtureModel::to_json() const {
  nlohmann::ordered_json j;
  j["alphabet"] = alphabet.size();
  nlohmann::ordered_json ws = nlohmann::ordered_json::array();
  for (const Rational& w : weights) ws.push_back(to_string(w));
  j["weights"] = std::move(ws);
  nlohmann::ordered_json cs = nlohmann::ordered_json::array();
  for (const auto& q : components) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (const Rational& v : q) row.push_back(to_string(v));
    cs.push_back(std::move(row));
  }
  j["components"] = std::move(cs);
  return j;
}

CylinderState mixture_state(const MixtureModel& m, int n) {
  CylinderState::Pmf out;
  for (size_t k = 0; k < m.components.size(); ++k) {
    if (m.weights[k] == 0) continue;
    CylinderState comp = iid_truncation(m.alphabet, m.components[k], n);
    for (const auto& [w, p] : comp.pmf()) out[w] += m.weights[k] * p;
  }
  return CylinderState(m.alphabet, n, std::move(out));
}

bool is_exchangeable(const CylinderState& s) {
  for (int i = 0; i + 1 < s.length(); ++i) {
    FinitePermutation tau =
        FinitePermutation::adjacent_transposition(s.length(), i);
    if (permute(s, tau) != s) return false;
  }
  return true;
}

nlohmann::ordered_json cylinder_to_json(const CylinderState& s) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["type"] = "cylinder";
  j["alphabet"] = s.alphabet().size();
  j["length"] = s.length();
  nlohmann::ordered_json pmf = nlohmann::ordered_json::object();
  for (const auto& [w, p] : s.pmf()) pmf[word_key(s.alphabet(), w)] = to_string(p);
  j["pmf"] = std::move(pmf);
  return j;
}

}  // namespace esamp
