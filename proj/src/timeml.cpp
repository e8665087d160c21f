#include <algorithm>
#include <charconv>
#include <map>
#include <optional>
#include <string>

#include "tea/corpus_io.hpp"
#include "tea/error.hpp"
#include "xml_reader.hpp"

namespace tea {

namespace {

std::optional<std::string> attribute(const AttributeList& attrs, std::string_view key) {
  for (const auto& [k, v] : attrs) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::string format_score(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

struct RawLink {
  AttributeList attributes;
  std::size_t line = 0;
};

struct OpenMention {
  std::string element;
  AttributeList attributes;
  std::size_t begin = 0;
  std::size_t line = 0;
};

TimexMention make_timex(const AttributeList& attrs, std::size_t line) {
  TimexMention t;
  auto tid = attribute(attrs, "tid");
  if (!tid) throw ParseError("TIMEX3 without tid", line);
  t.id = *tid;
  auto type_text = attribute(attrs, "type").value_or("DATE");
  auto type = parse_timex_type(type_text);
  if (!type) throw ParseError("unknown TIMEX3 type " + type_text, line);
  t.type = *type;
  t.value = attribute(attrs, "value").value_or("");
  for (const auto& [k, v] : attrs) {
    if (k != "tid" && k != "type" && k != "value") t.attributes.emplace_back(k, v);
  }
  return t;
}

}  // namespace

Document parse_timeml(std::string_view xml_text, const TimeMLOptions& options) {
  Document doc;
  xml::Reader reader(xml_text);

  std::vector<std::string> stack;
  std::vector<OpenMention> open;
  std::vector<RawLink> raw_links;
  std::map<std::string, std::string> instance_to_event;
  std::map<std::string, EventInstance> first_instance;
  std::string docid;
  bool have_dct = false;
  bool in_text = false;
  bool in_dct_timex = false;
  bool seen_root = false;

  auto inside = [&](std::string_view name) {
    return std::find(stack.begin(), stack.end(), name) != stack.end();
  };

  while (auto ev = reader.next()) {
    switch (ev->kind) {
      case xml::EventKind::kStart: {
        if (stack.empty()) {
          if (seen_root) throw ParseError("more than one root element", ev->line);
          seen_root = true;
        }
        const std::string& name = ev->name;
        if (name == "TEXT") {
          in_text = true;
        } else if (in_text && (name == "EVENT" || name == "TIMEX3")) {
          open.push_back({name, ev->attributes, doc.text.size(), ev->line});
        } else if (name == "TIMEX3" &&
                   (inside("DCT") ||
                    attribute(ev->attributes, "functionInDocument") == "CREATION_TIME")) {
          if (have_dct) throw StructuralError("more than one DCT declared");
          doc.dct = make_timex(ev->attributes, ev->line);
          doc.dct.is_dct = true;
          have_dct = true;
          in_dct_timex = true;
        } else if (name == "MAKEINSTANCE") {
          auto eid = attribute(ev->attributes, "eventID");
          auto eiid = attribute(ev->attributes, "eiid");
          if (!eid || !eiid) throw ParseError("MAKEINSTANCE needs eventID and eiid", ev->line);
          instance_to_event[*eiid] = *eid;
          if (!first_instance.contains(*eid)) {
            EventInstance inst{*eiid, {}};
            for (const auto& [k, v] : ev->attributes) {
              if (k != "eventID" && k != "eiid") inst.attributes.emplace_back(k, v);
            }
            first_instance.emplace(*eid, std::move(inst));
          }
        } else if (name == "TLINK") {
          raw_links.push_back({ev->attributes, ev->line});
        }
        stack.push_back(name);
        break;
      }
      case xml::EventKind::kEnd: {
        stack.pop_back();
        if (ev->name == "TEXT") {
          in_text = false;
        } else if (in_dct_timex && ev->name == "TIMEX3") {
          in_dct_timex = false;
        } else if (in_text && (ev->name == "EVENT" || ev->name == "TIMEX3")) {
          if (open.empty() || open.back().element != ev->name) {
            throw ParseError("unbalanced " + ev->name, ev->line);
          }
          OpenMention m = std::move(open.back());
          open.pop_back();
          CharSpan span{m.begin, doc.text.size()};
          std::string text = doc.text.substr(span.begin, span.end - span.begin);
          if (m.element == "EVENT") {
            EventMention e;
            auto eid = attribute(m.attributes, "eid");
            if (!eid) throw ParseError("EVENT without eid", m.line);
            e.id = *eid;
            e.text = std::move(text);
            e.span = span;
            e.class_attr = attribute(m.attributes, "class");
            doc.events.push_back(std::move(e));
          } else {
            TimexMention t = make_timex(m.attributes, m.line);
            if (attribute(m.attributes, "functionInDocument") == "CREATION_TIME") {
              if (have_dct) throw StructuralError("more than one DCT declared");
              t.is_dct = true;
              t.text = std::move(text);
              doc.dct = std::move(t);
              have_dct = true;
            } else {
              t.text = std::move(text);
              t.span = span;
              doc.timexes.push_back(std::move(t));
            }
          }
        }
        break;
      }
      case xml::EventKind::kText: {
        if (in_text) {
          doc.text += ev->text;
        } else if (in_dct_timex) {
          doc.dct.text += ev->text;
        } else if (!stack.empty() && stack.back() == "DOCID") {
          docid += ev->text;
        }
        break;
      }
    }
  }

  if (!have_dct) throw StructuralError("document declares no DCT");

  auto trim = [](std::string s) {
    auto b = s.find_first_not_of(" \t\r\n");
    auto e = s.find_last_not_of(" \t\r\n");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  docid = trim(docid);
  doc.doc_id = docid.empty() ? options.fallback_doc_id : docid;

  std::stable_sort(doc.events.begin(), doc.events.end(),
            [](const auto& a, const auto& b) { return a.span.begin < b.span.begin; });
  std::stable_sort(doc.timexes.begin(), doc.timexes.end(),
            [](const auto& a, const auto& b) { return a.span.begin < b.span.begin; });
  for (auto& e : doc.events) {
    auto it = first_instance.find(e.id);
    e.instance = it != first_instance.end() ? it->second
                                            : EventInstance{default_instance_id(e.id), {}};
  }

  std::size_t generated = 0;
  for (const auto& raw : raw_links) {
    auto endpoint = [&](std::string_view instance_key, std::string_view time_key) {
      if (auto eiid = attribute(raw.attributes, instance_key)) {
        auto it = instance_to_event.find(*eiid);
        if (it == instance_to_event.end()) {
          throw AlignmentError("line " + std::to_string(raw.line) +
                               ": TLINK references unknown event instance " + *eiid);
        }
        if (!doc.find_event(it->second)) {
          throw AlignmentError("line " + std::to_string(raw.line) + ": instance " + *eiid +
                               " refers to unknown event " + it->second);
        }
        return it->second;
      }
      if (auto tid = attribute(raw.attributes, time_key)) {
        if (!doc.find_timex(*tid)) {
          throw AlignmentError("line " + std::to_string(raw.line) +
                               ": TLINK references unknown time expression " + *tid);
        }
        return *tid;
      }
      throw ParseError("TLINK is missing an endpoint", raw.line);
    };

    auto rel_text = attribute(raw.attributes, "relType");
    if (!rel_text) throw ParseError("TLINK without relType", raw.line);
    auto rel = parse_relation(*rel_text, options.merge_identity);
    if (!rel) {
      if (*rel_text == "IDENTITY") continue;
      throw ParseError("unknown relType " + *rel_text, raw.line);
    }

    TLink link;
    link.id = attribute(raw.attributes, "lid").value_or("");
    if (link.id.empty()) link.id = "l_auto" + std::to_string(++generated);
    link.source = endpoint("eventInstanceID", "timeID");
    link.target = endpoint("relatedToEventInstance", "relatedToTime");
    link.relation = *rel;
    link.origin = parse_link_origin(attribute(raw.attributes, "origin").value_or("gold"))
                      .value_or(LinkOrigin::kGold);
    if (link.origin != LinkOrigin::kGold) {
      if (auto score = attribute(raw.attributes, "score")) {
        double v = 0.0;
        auto res = std::from_chars(score->data(), score->data() + score->size(), v);
        if (res.ec != std::errc() || res.ptr != score->data() + score->size()) {
          throw ParseError("bad TLINK score " + *score, raw.line);
        }
        link.score = v;
      }
    }
    doc.tlinks.push_back(std::move(link));
  }

  doc.validate();
  return doc;
}

std::string serialize_timeml(const Document& doc) {
  std::string out;
  auto attrs = [&](const AttributeList& list) {
    for (const auto& [k, v] : list) out += " " + k + "=\"" + xml::escape_attribute(v) + "\"";
  };
  auto timex_open = [&](const TimexMention& t) {
    out += "<TIMEX3 tid=\"" + xml::escape_attribute(t.id) + "\" type=\"" +
           std::string(to_string(t.type)) + "\" value=\"" + xml::escape_attribute(t.value) + "\"";
    attrs(t.attributes);
    out += ">";
  };

  out += "<?xml version=\"1.0\" ?>\n<TimeML>\n";
  out += "<DOCID>" + xml::escape_text(doc.doc_id) + "</DOCID>\n";
  out += "<DCT>";
  timex_open(doc.dct);
  out += xml::escape_text(doc.dct.text) + "</TIMEX3></DCT>\n";

  // Tag boundaries: at each offset close inner-first, then open outer-first.
  struct Marker {
    std::size_t offset;
    int order;  // 0 = close, 1 = open
    std::size_t width;
    std::string tag;
  };
  std::vector<Marker> markers;
  for (const auto& e : doc.events) {
    std::string open = "<EVENT eid=\"" + xml::escape_attribute(e.id) + "\"";
    if (e.class_attr) open += " class=\"" + xml::escape_attribute(*e.class_attr) + "\"";
    open += ">";
    markers.push_back({e.span.begin, 1, e.span.end - e.span.begin, std::move(open)});
    markers.push_back({e.span.end, 0, e.span.end - e.span.begin, "</EVENT>"});
  }
  for (const auto& t : doc.timexes) {
    std::string saved;
    std::swap(saved, out);
    timex_open(t);
    std::swap(saved, out);
    markers.push_back({t.span.begin, 1, t.span.end - t.span.begin, std::move(saved)});
    markers.push_back({t.span.end, 0, t.span.end - t.span.begin, "</TIMEX3>"});
  }
  std::stable_sort(markers.begin(), markers.end(), [](const Marker& a, const Marker& b) {
    if (a.offset != b.offset) return a.offset < b.offset;
    if (a.order != b.order) return a.order < b.order;
    return a.order == 0 ? a.width < b.width : a.width > b.width;
  });

  out += "<TEXT>";
  std::size_t cursor = 0;
  for (const auto& m : markers) {
    out += xml::escape_text(std::string_view(doc.text).substr(cursor, m.offset - cursor));
    cursor = m.offset;
    out += m.tag;
  }
  out += xml::escape_text(std::string_view(doc.text).substr(cursor));
  out += "</TEXT>\n";

  for (const auto& e : doc.events) {
    out += "<MAKEINSTANCE eventID=\"" + xml::escape_attribute(e.id) + "\" eiid=\"" +
           xml::escape_attribute(e.instance.eiid) + "\"";
    attrs(e.instance.attributes);
    out += "/>\n";
  }
  for (const auto& link : doc.tlinks) {
    auto endpoint = [&](const std::string& id, std::string_view instance_key,
                        std::string_view time_key) {
      if (const auto* e = doc.find_event(id)) {
        return std::string(instance_key) + "=\"" + xml::escape_attribute(e->instance.eiid) + "\"";
      }
      return std::string(time_key) + "=\"" + xml::escape_attribute(id) + "\"";
    };
    std::string_view rel =
        link.relation == RelationLabel::kNoLink ? "VAGUE" : to_string(link.relation);
    out += "<TLINK lid=\"" + xml::escape_attribute(link.id) + "\" relType=\"" + std::string(rel) +
           "\" " + endpoint(link.source, "eventInstanceID", "timeID") + " " +
           endpoint(link.target, "relatedToEventInstance", "relatedToTime");
    if (link.origin != LinkOrigin::kGold) {
      out += " origin=\"" + std::string(to_string(link.origin)) + "\" score=\"" +
             format_score(link.score) + "\"";
    }
    out += "/>\n";
  }
  out += "</TimeML>\n";
  return out;
}

}  // namespace tea
