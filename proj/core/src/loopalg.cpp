#include "kmr/loopalg.hpp"

#include <algorithm>
#include <regex>

namespace kmr {

void LieElt::add(const LieKey& key, const Q& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.try_emplace(key, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Q LieElt::coeff(const LieKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? Q(0) : it->second;
}

LieElt& LieElt::operator+=(const LieElt& o) {
  for (const auto& [k, c] : o.terms_) add(k, c);
  return *this;
}

LieElt& LieElt::operator-=(const LieElt& o) {
  for (const auto& [k, c] : o.terms_) add(k, -c);
  return *this;
}

LieElt& LieElt::operator*=(const Q& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

namespace {

int root_pair(const IntMatrix& fin, const RootVec& a, const RootVec& b) {
  int s = 0;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) s += a[i] * fin[i][j] * b[j];
  return s;
}

int fk_epsilon(const IntMatrix& fin, const RootVec& a, const RootVec& b) {
  int e = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    e += a[i] * b[i];
    for (size_t j = i + 1; j < b.size(); ++j) e += fin[i][j] * a[i] * b[j];
  }
  return (e % 2 == 0) ? 1 : -1;
}

int root_sign(const RootVec& r) {
  for (int c : r)
    if (c != 0) return c > 0 ? 1 : -1;
  return 0;
}

}  // namespace

StructureConstants::StructureConstants(const AffineData& ad) : ad_(&ad), dim_(ad.dim()) {
  const int l = ad.rank;
  IntMatrix fin(l, std::vector<int>(l));
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) fin[i][j] = ad.cartan[i + 1][j + 1];
  for (int i = 0; i <= l; ++i)
    for (int j = 0; j <= l; ++j)
      if (ad.cartan[i][j] != ad.cartan[j][i] || (i != j && ad.cartan[i][j] < -1 && l > 1))
        throw AlgebraError("structure constants are implemented for simply-laced types only");

  f_.assign(dim_ * dim_, {});
  pairing_.assign(dim_ * dim_, Q(0));
  for (int a = 0; a < dim_; ++a) {
    const LabelInfo& la = ad.labels[a];
    for (int b = 0; b < dim_; ++b) {
      const LabelInfo& lb = ad.labels[b];
      auto& out = f_[a * dim_ + b];
      if (!la.is_root && !lb.is_root) {
        pairing_[a * dim_ + b] = fin[la.node - 1][lb.node - 1];
        continue;
      }
      if (!la.is_root) {  // [H_i, E_beta]
        RootVec ai(l, 0);
        ai[la.node - 1] = 1;
        int c = root_pair(fin, ai, lb.root);
        if (c != 0) out.emplace_back(b, Q(c));
        continue;
      }
      if (!lb.is_root) {  // [E_alpha, H_j]
        RootVec aj(l, 0);
        aj[lb.node - 1] = 1;
        int c = root_pair(fin, aj, la.root);
        if (c != 0) out.emplace_back(a, Q(-c));
        continue;
      }
      RootVec sum(l);
      bool opposite = true;
      for (int i = 0; i < l; ++i) {
        sum[i] = la.root[i] + lb.root[i];
        if (sum[i] != 0) opposite = false;
      }
      if (opposite) {
        pairing_[a * dim_ + b] = 1;
        for (int i = 0; i < l; ++i)
          if (la.root[i] != 0) out.emplace_back(ad.cartan_label[i + 1], Q(la.root[i]));
        continue;
      }
      auto it = ad.root_label.find(sum);
      if (it == ad.root_label.end()) continue;
      int n = root_sign(la.root) * root_sign(lb.root) * root_sign(sum) * fk_epsilon(fin, la.root, lb.root);
      out.emplace_back(it->second, Q(n));
    }
  }
  for (auto& v : f_) std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });

  // Jacobi on the finite algebra
  std::vector<Q> acc(dim_);
  for (int a = 0; a < dim_; ++a)
    for (int b = 0; b < dim_; ++b)
      for (int c = 0; c < dim_; ++c) {
        std::fill(acc.begin(), acc.end(), Q(0));
        auto cyc = [&](int x, int y, int z) {
          for (const auto& [yz, c1] : f(y, z))
            for (const auto& [r, c2] : f(x, yz)) acc[r] += c1 * c2;
        };
        cyc(a, b, c);
        cyc(b, c, a);
        cyc(c, a, b);
        for (const Q& q : acc)
          if (q != 0) throw AlgebraError("internal error: structure constants violate Jacobi");
      }
}

int StructureConstants::sigma_sign(const GenIdx& x) const {
  int h = ad_->affine_height(x);
  return (h % 2 == 0) ? -1 : 1;
}

LoopAlgebra::LoopAlgebra(AffineData ad) : ad_(std::move(ad)), sc_(ad_) {}

LieElt LoopAlgebra::bracket(const LieElt& x, const LieElt& y) const {
  LieElt out;
  for (const auto& [kx, cx] : x.terms()) {
    for (const auto& [ky, cy] : y.terms()) {
      Q c = cx * cy;
      if (kx.kind == LieKey::K || ky.kind == LieKey::K) continue;
      if (kx.kind == LieKey::D && ky.kind == LieKey::D) continue;
      if (kx.kind == LieKey::D) {
        if (ky.idx.n != 0) out.add(ky, c * ky.idx.n);
        continue;
      }
      if (ky.kind == LieKey::D) {
        if (kx.idx.n != 0) out.add(kx, -c * kx.idx.n);
        continue;
      }
      const int m = kx.idx.n, n = ky.idx.n;
      for (const auto& [lab, f] : sc_.f(kx.idx.label, ky.idx.label)) out.add(LieKey::j(lab, m + n), c * f);
      if (m + n == 0 && m != 0) {
        const Q& p = sc_.pairing(kx.idx.label, ky.idx.label);
        if (p != 0) out.add(LieKey::k(), c * p * m);
      }
    }
  }
  return out;
}

Q LoopAlgebra::bilinear_form(const LieElt& x, const LieElt& y) const {
  Q s = 0;
  for (const auto& [kx, cx] : x.terms())
    for (const auto& [ky, cy] : y.terms()) {
      if (kx.kind == LieKey::J && ky.kind == LieKey::J) {
        if (kx.idx.n + ky.idx.n == 0) s += cx * cy * sc_.pairing(kx.idx.label, ky.idx.label);
      } else if ((kx.kind == LieKey::K && ky.kind == LieKey::D) || (kx.kind == LieKey::D && ky.kind == LieKey::K)) {
        s += cx * cy;
      }
    }
  return s;
}

LieElt LoopAlgebra::cartan_sigma(const LieElt& x) const {
  LieElt out;
  for (const auto& [k, c] : x.terms()) {
    if (k.kind != LieKey::J) {
      out.add(k, -c);
      continue;
    }
    GenIdx m = ad_.mirror(k.idx);
    out.add(LieKey{LieKey::J, m}, c * sc_.sigma_sign(k.idx));
  }
  return out;
}

LieElt LoopAlgebra::e(int i) const {
  GenIdx x = ad_.e_index(i);
  return LieElt::j(x.label, x.n);
}

LieElt LoopAlgebra::f(int i) const {
  GenIdx x = ad_.f_index(i);
  return LieElt::j(x.label, x.n);
}

LieElt LoopAlgebra::coroot(int i) const {
  if (i == 0) {
    LieElt out = LieElt::k();
    for (int j = 1; j <= ad_.rank; ++j) out.add(LieKey::j(ad_.cartan_label[j], 0), -ad_.theta[j - 1]);
    return out;
  }
  return LieElt::j(ad_.cartan_label[i], 0);
}

LieElt LoopAlgebra::parse(const std::string& s) const {
  static const std::regex chev(R"(^([efh])(\d+)$)");
  static const std::regex idx(R"(^(?:J\()?\s*([A-Za-z0-9]+)\s*,\s*(-?\d+)\s*\)?$)");
  std::smatch m;
  if (s == "k") return LieElt::k();
  if (s == "d") return LieElt::d();
  if (std::regex_match(s, m, chev)) {
    int i = std::stoi(m[2].str());
    if (i < 0 || i > ad_.rank) throw AlgebraError("generator index out of range in '" + s + "'");
    char c = m[1].str()[0];
    return c == 'e' ? e(i) : c == 'f' ? f(i) : coroot(i);
  }
  if (std::regex_match(s, m, idx)) return LieElt::j(ad_.label_of(m[1].str()), std::stoi(m[2].str()));
  throw AlgebraError("cannot parse generator '" + s + "'");
}

std::string LoopAlgebra::render(const LieElt& x) const {
  if (x.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, c] : x.terms()) {
    Q a = abs(c);
    out += (c < 0) ? (first ? "-" : " - ") : (first ? "" : " + ");
    if (a != 1) out += a.get_str() + "*";
    if (k.kind == LieKey::K) out += "k";
    else if (k.kind == LieKey::D) out += "d";
    else out += "J_{" + genidx_str(ad_, k.idx) + "}";
    first = false;
  }
  return out;
}

AffWeight LoopAlgebra::weight(const LieElt& x) const {
  bool have = false;
  AffWeight w;
  for (const auto& [k, c] : x.terms()) {
    AffWeight wk = k.kind == LieKey::J ? ad_.wgt(k.idx) : AffWeight{RootVec(ad_.rank, 0), 0};
    if (have && !(wk == w)) throw AlgebraError("element is not homogeneous");
    w = wk;
    have = true;
  }
  if (!have) w.fin.assign(ad_.rank, 0);
  return w;
}

LieElt ad_power(const LoopAlgebra& g, const LieElt& x, const LieElt& y, int n) {
  LieElt r = y;
  for (int i = 0; i < n; ++i) r = g.bracket(x, r);
  return r;
}

}  // namespace kmr
