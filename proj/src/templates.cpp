#include "qot/templates.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "default_templates.hpp"
#include "qot/errors.hpp"

namespace qot {

namespace {

bool is_placeholder_char(char c, bool first) {
  if (first) return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

/// Returns the placeholder name starting at text[pos] == '{', or nullopt when
/// the brace does not open a {identifier} placeholder.
std::optional<std::string> placeholder_at(const std::string& text, std::size_t pos) {
  std::size_t i = pos + 1;
  std::string name;
  while (i < text.size() && text[i] != '}') {
    if (!is_placeholder_char(text[i], name.empty())) return std::nullopt;
    name += text[i];
    ++i;
  }
  if (i >= text.size() || name.empty()) return std::nullopt;
  return name;
}

void scan_placeholders(const std::string& text, std::set<std::string>& out) {
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '{') continue;
    if (auto name = placeholder_at(text, i)) out.insert(*name);
  }
}

std::string substitute(const std::string& text,
                       const std::map<std::string, std::string>& bindings) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size();) {
    if (text[i] == '{') {
      if (auto name = placeholder_at(text, i)) {
        auto it = bindings.find(*name);
        if (it == bindings.end()) throw MissingPlaceholder(*name);
        out += it->second;  // inserted literally, never re-expanded
        i += name->size() + 2;
        continue;
      }
    }
    out += text[i++];
  }
  return out;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

PromptTemplate PromptTemplate::parse(std::string id, const std::string& text) {
  PromptTemplate tpl;
  tpl.template_id = std::move(id);

  std::vector<std::pair<Role, std::string>> sections;
  Role current = Role::User;
  std::string buffer;
  bool saw_marker = false;

  std::istringstream in(text);
  std::string line;
  auto flush = [&] {
    std::string body = trim(buffer);
    if (!body.empty()) sections.emplace_back(current, std::move(body));
    buffer.clear();
  };
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string t = trim(line);
    if (t == "[[system]]" || t == "[[user]]" || t == "[[assistant]]") {
      flush();
      current = role_from_string(t.substr(2, t.size() - 4));
      saw_marker = true;
      continue;
    }
    buffer += line;
    buffer += "\n";
  }
  flush();

  if (sections.empty()) {
    throw TemplateError("template '" + tpl.template_id + "' has no content");
  }
  (void)saw_marker;
  for (auto& [role, body] : sections) {
    tpl.role_layout.push_back(role);
    scan_placeholders(body, tpl.required_placeholders);
    tpl.sections.push_back(std::move(body));
  }
  return tpl;
}

TemplateRegistry TemplateRegistry::builtin() {
  TemplateRegistry registry;
  for (const auto& [id, text] : detail::builtin_template_sources()) {
    registry.put(PromptTemplate::parse(id, text));
  }
  return registry;
}

void TemplateRegistry::load_dir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw TemplateError("template directory does not exist: " + dir.string());
  }
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
    std::ifstream in(entry.path());
    std::stringstream ss;
    ss << in.rdbuf();
    put(PromptTemplate::parse(entry.path().stem().string(), ss.str()));
  }
}

void TemplateRegistry::put(PromptTemplate tpl) {
  templates_[tpl.template_id] = std::move(tpl);
}

const PromptTemplate& TemplateRegistry::get(const std::string& template_id) const {
  auto it = templates_.find(template_id);
  if (it == templates_.end()) {
    throw UnknownTemplate("no template with id '" + template_id + "'");
  }
  return it->second;
}

bool TemplateRegistry::contains(const std::string& template_id) const {
  return templates_.count(template_id) > 0;
}

ChatRequest render(const PromptTemplate& tpl,
                   const std::map<std::string, std::string>& bindings,
                   const std::string& model_name, double temperature,
                   std::optional<long long> seed) {
  ChatRequest request;
  request.model_name = model_name;
  request.temperature = temperature;
  request.seed = seed;
  for (std::size_t i = 0; i < tpl.sections.size(); ++i) {
    ChatMessage msg;
    msg.role = tpl.role_layout[i];
    msg.content = substitute(tpl.sections[i], bindings);
    request.messages.push_back(std::move(msg));
  }
  if (request.messages.empty()) {
    throw TemplateError("template '" + tpl.template_id + "' rendered no messages");
  }
  if (request.messages.back().role != Role::User) {
    throw TemplateError("template '" + tpl.template_id +
                        "' must end with a user message");
  }
  return request;
}

}  // namespace qot
