#include "qsv/presets.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include "qsv/errors.hpp"

namespace qsv {

namespace {

// q = s^2 throughout, so q^(1/2) is written s.
const std::map<std::string, std::string>& builtin_sources() {
  static const std::map<std::string, std::string> sources{
      {"P_full", R"(name = P_full
generic-q = true

[generators]
x : even invertible
theta : odd
y : even

[relations]
x * theta = q * theta * x
x * y = q^2 * y * x
y * theta = q^-1 * theta * y
theta^2 = s * (q - 1) * y * x

[maps]
coproduct x = x (x) x
coproduct theta = theta (x) 1 + 1 (x) theta
coproduct y = x^-1 (x) y + y (x) x^-1
counit x = 1
counit theta = 0
counit y = 0
antipode x = x^-1
antipode theta = -theta
antipode y = -x * y * x
)"},
      {"P_red", R"(name = P_red
generic-q = true

[generators]
x_+ : even
theta : odd
x_- : even

[relations]
x_+ * theta = q * theta * x_+
x_- * theta = q^-1 * theta * x_-
x_+ * x_- - x_- * x_+ = s^-1 * (q + 1) * theta^2

[maps]
star x_+ = s * x_-
star theta = I * theta
star x_- = s^-1 * x_+

[transform]
name g_h
target X_+ Theta X_-
x_+ = X_+
theta = Theta
x_- = h / (q - 1) * X_+ + X_-
)"},
      {"P_ext", R"(name = P_ext
generic-q = true

[generators]
x_+ : even invertible
theta : odd
x_- : even

[relations]
x_+ * theta = q * theta * x_+
x_- * theta = q^-1 * theta * x_-
x_+ * x_- - x_- * x_+ = s^-1 * (q + 1) * theta^2

[maps]
coproduct x_+ = x_+ (x) x_+
coproduct theta = theta (x) 1 + 1 (x) theta
coproduct x_- = x_+^-1 (x) x_- + x_- (x) x_+^-1
counit x_+ = 1
counit theta = 0
counit x_- = 0
antipode x_+ = x_+^-1
antipode theta = -theta
antipode x_- = -x_+ * x_- * x_+
star x_+ = s * x_-
star theta = I * theta
star x_- = s^-1 * x_+
)"},
      {"SP_h", R"(name = SP_h

[generators]
X_+ : even
Theta : odd
X_- : even

[relations]
X_+ * Theta = Theta * X_+
X_- * Theta = Theta * X_- - 2 * h * Theta * X_+
X_+ * X_- = X_- * X_+ + 2 * Theta^2
)"},
      {"SP_q_1|2", R"(name = SP_q_1|2
generic-q = true

[generators]
phi_+ : odd
z : even
phi_- : odd

[relations]
z * phi_+ = q * phi_+ * z
z * phi_- = q^-1 * phi_- * z
phi_- * phi_+ + q^-2 * phi_+ * phi_- + q^-2 * (s - s^3) * z^2 = 0
phi_+^2 = 0
phi_-^2 = 0

[transform]
name g_h
target Phi_+ Z Phi_-
phi_+ = Phi_+
z = Z
phi_- = h / (q - 1) * Phi_+ + Phi_-
)"},
      {"Lambda_h", R"(name = Lambda_h

[generators]
Phi_+ : odd
Z : even
Phi_- : odd

[relations]
Phi_+ * Z = Z * Phi_+
Z * Phi_- = Phi_- * Z - 2 * h * Phi_+ * Z
Phi_- * Phi_+ = -Phi_+ * Phi_-
Phi_+^2 = 0
Phi_-^2 = h * (2 * Phi_- * Phi_+ - Z^2)
)"},
      {"SPq21_sub6", R"(name = SPq21_sub6
generic-q = true

[generators]
a : even
alpha : odd
b : even
c : even
delta : odd
d : even

[relations]
a * b = q^2 * b * a
a * c = q^2 * c * a
a * alpha = q * alpha * a
a * delta = q * delta * a + (q - q^-1) * alpha * c
a * d = d * a + (q - q^-1) * ((1 + q^-1) * b * c + s^-1 * alpha * delta)
b * c = c * b
b * d = q^2 * d * b
b * alpha = q^-1 * alpha * b
b * delta = q * delta * b
c * d = q^2 * d * c
c * alpha = q^-1 * alpha * c
c * delta = q * delta * c
d * alpha = q^-1 * alpha * d + (q^-1 - q) * delta * b
d * delta = q^-1 * delta * d
alpha * delta = -q * delta * alpha + s^-1 * (q^2 - 1) * b * c
alpha^2 = s * (q - 1) * b * a
delta^2 = s * (q - 1) * d * c
)"},
      {"SPq21_partial", R"(name = SPq21_partial
generic-q = true

[generators]
a : even
alpha : odd
b : even
gamma : odd incomplete
e : even incomplete
beta : odd incomplete
c : even
delta : odd
d : even

[relations]
a * b = q^2 * b * a
a * c = q^2 * c * a
a * alpha = q * alpha * a
a * delta = q * delta * a + (q - q^-1) * alpha * c
a * d = d * a + (q - q^-1) * ((1 + q^-1) * b * c + s^-1 * alpha * delta)
b * c = c * b
b * d = q^2 * d * b
b * alpha = q^-1 * alpha * b
b * delta = q * delta * b
c * d = q^2 * d * c
c * alpha = q^-1 * alpha * c
c * delta = q * delta * c
d * alpha = q^-1 * alpha * d + (q^-1 - q) * delta * b
d * delta = q^-1 * delta * d
alpha * delta = -q * delta * alpha + s^-1 * (q^2 - 1) * b * c
alpha^2 = s * (q - 1) * b * a
delta^2 = s * (q - 1) * d * c
e * alpha - q * alpha * e = s * (q - 1) * (gamma * b + beta * a)
e * beta - q^-1 * beta * e = s^-1 * (q^-1 - 1) * (delta * b + alpha * d)
e * gamma - q * gamma * e = s * (1 - q) * (delta * a + alpha * c)
e * delta - q^-1 * delta * e = s^-1 * (1 - q^-1) * (gamma * d + beta * c)
beta^2 = s * (q - 1) * d * b
gamma^2 = s * (q - 1) * c * a
e^2 = 1 - s^-1 * (alpha * delta - q * delta * alpha)
e^2 = 1 + s * (beta * gamma - q^-1 * gamma * beta)

[maps]
coproduct a = a (x) a + alpha (x) gamma + b (x) c
coproduct alpha = a (x) alpha + alpha (x) e + b (x) delta
coproduct b = a (x) b + alpha (x) beta + b (x) d
coproduct gamma = gamma (x) a + e (x) gamma + beta (x) c
coproduct e = gamma (x) alpha + e (x) e + beta (x) delta
coproduct beta = gamma (x) b + e (x) beta + beta (x) d
coproduct c = c (x) a + delta (x) gamma + d (x) c
coproduct delta = c (x) alpha + delta (x) e + d (x) delta
coproduct d = c (x) b + delta (x) beta + d (x) d
counit a = 1
counit alpha = 0
counit b = 0
counit gamma = 0
counit e = 1
counit beta = 0
counit c = 0
counit delta = 0
counit d = 1
antipode a = d
antipode alpha = s^-1 * beta
antipode b = -q^-1 * b
antipode gamma = -s * delta
antipode e = e
antipode beta = s^-1 * alpha
antipode c = -q * c
antipode delta = -s * gamma
antipode d = a
)"},
      {"U_Lhbar", R"(name = U_Lhbar

[generators]
u : even
xi : odd
v : even

[relations]
u * xi - xi * u = hb * xi
xi * v - v * xi = 0
u * v - v * u = c * xi^2

[maps]
coproduct u = u (x) 1 + 1 (x) u
coproduct xi = xi (x) 1 + 1 (x) xi
coproduct v = v (x) 1 + 1 (x) v
counit u = 0
counit xi = 0
counit v = 0
antipode u = -u
antipode xi = -xi
antipode v = -v
)"},
  };
  return sources;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw Error("cannot read " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::optional<std::string> from_preset_path(const std::string& name) {
  const char* env = std::getenv("QSV_PRESET_PATH");
  if (env == nullptr) return std::nullopt;
  std::stringstream dirs(env);
  std::string dir;
  while (std::getline(dirs, dir, ':')) {
    if (dir.empty()) continue;
    for (const auto& candidate : {name + ".qs", name}) {
      std::filesystem::path p = std::filesystem::path(dir) / candidate;
      if (std::filesystem::is_regular_file(p)) return slurp(p);
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<std::string> builtin_preset_names() {
  return {"P_full", "P_red", "P_ext", "SP_h", "SP_q_1|2", "Lambda_h", "SPq21_sub6", "SPq21_partial", "U_Lhbar"};
}

std::string preset_source(const std::string& name) {
  if (auto user = from_preset_path(name)) return *user;
  auto it = builtin_sources().find(name);
  if (it == builtin_sources().end()) throw Error("unknown preset '" + name + "'");
  return it->second;
}

std::string read_spec_text(const std::string& name_or_path) {
  bool path_like = name_or_path.find('/') != std::string::npos ||
                   (name_or_path.size() > 3 && name_or_path.ends_with(".qs"));
  if (path_like) return slurp(name_or_path);
  return preset_source(name_or_path);
}

SpecFile load_preset(const std::string& name) {
  static std::mutex mutex;
  static std::map<std::string, SpecFile> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(name);
  if (it != cache.end()) return it->second;
  SpecFile spec = parse_spec(read_spec_text(name), name);
  return cache.emplace(name, std::move(spec)).first->second;
}

}  // namespace qsv
