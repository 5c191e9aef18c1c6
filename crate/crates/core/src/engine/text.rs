use super::types::*;
use super::{EngineError, EngineResult};
use crate::cards;

pub const FORBIDDEN_TYPE: &str = "Wall";

/// Append `e` to the permanent's edits. Type edits also rewrite its type
/// line; color-word edits touch only the rules text; `set_colors` changes the
/// permanent's own colors.
pub fn apply_text_edit(p: &Permanent, e: TextEdit) -> EngineResult<Permanent> {
    let mut out = p.clone();
    match e.kind {
        TextEditKind::ReplaceCreatureType | TextEditKind::AddCreatureType => {
            if e.to_tag == FORBIDDEN_TYPE {
                return Err(EngineError::BadTextEdit("a creature type can't become Wall".into()));
            }
            if e.to_tag.is_empty() || e.to_tag.contains(char::is_whitespace) {
                return Err(EngineError::BadTextEdit(format!("bad creature type {:?}", e.to_tag)));
            }
            if e.kind == TextEditKind::AddCreatureType {
                out.creature_types.insert(e.to_tag.clone());
            } else if out.creature_types.remove(&e.from_tag) {
                out.creature_types.insert(e.to_tag.clone());
            }
        }
        TextEditKind::ReplaceColorWord => {
            if Color::from_word(&e.from_tag).is_none() || Color::from_word(&e.to_tag).is_none() {
                return Err(EngineError::BadTextEdit(format!("bad color words {:?} {:?}", e.from_tag, e.to_tag)));
            }
        }
        TextEditKind::SetColors => {
            let mut colors = std::collections::BTreeSet::new();
            for w in e.to_tag.split(',').filter(|w| !w.is_empty()) {
                colors.insert(Color::from_word(w).ok_or_else(|| EngineError::BadTextEdit(format!("bad color {w:?}")))?);
            }
            out.colors = colors;
        }
    }
    out.text_edits.push(e);
    Ok(out)
}

/// What the word `base` in this permanent's rules text currently reads.
pub fn edited_tag(p: &Permanent, base: &str) -> String {
    let mut tag = base.to_string();
    for e in &p.text_edits {
        if e.kind == TextEditKind::ReplaceCreatureType && e.from_tag == tag {
            tag = e.to_tag.clone();
        }
    }
    tag
}

pub fn edited_color(p: &Permanent, base: Color) -> Color {
    let mut c = base;
    for e in &p.text_edits {
        if e.kind == TextEditKind::ReplaceColorWord && e.from_tag == c.word() {
            c = Color::from_word(&e.to_tag).unwrap_or(c);
        }
    }
    c
}

fn replace_word(text: &str, from: &str, to: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut rest = text;
    while let Some(i) = rest.find(from) {
        let before_ok = rest[..i].chars().next_back().is_none_or(|c| !c.is_alphanumeric());
        let after = &rest[i + from.len()..];
        let after_ok = after.chars().next().is_none_or(|c| !c.is_alphanumeric() || c == 's');
        out.push_str(&rest[..i]);
        out.push_str(if before_ok && after_ok { to } else { from });
        rest = after;
    }
    out.push_str(rest);
    out
}

/// Card rules text with every edit applied in order.
pub fn render_rules_text(p: &Permanent) -> String {
    let mut text = cards::definition(&p.card).map(|d| d.rules_text.clone()).unwrap_or_default();
    for e in &p.text_edits {
        match e.kind {
            TextEditKind::ReplaceCreatureType | TextEditKind::ReplaceColorWord => {
                text = replace_word(&text, &e.from_tag, &e.to_tag);
            }
            TextEditKind::SetColors | TextEditKind::AddCreatureType => {}
        }
    }
    text
}

/// Type line such as `Creature - Zombie Cleric`.
pub fn render_type_line(p: &Permanent) -> String {
    let mut parts: Vec<&str> = Vec::new();
    for t in &p.card_types {
        parts.push(match t {
            CardType::Legendary => "Legendary",
            CardType::Artifact => "Artifact",
            CardType::Enchantment => "Enchantment",
            CardType::Land => "Land",
            CardType::Planeswalker => "Planeswalker",
            CardType::Creature => "Creature",
            CardType::Instant => "Instant",
            CardType::Sorcery => "Sorcery",
            CardType::Aura | CardType::Equipment => continue,
        });
    }
    let mut line = parts.join(" ");
    let subs: Vec<&str> = p.creature_types.iter().map(String::as_str).collect();
    if !subs.is_empty() {
        line.push_str(" - ");
        line.push_str(&subs.join(" "));
    }
    line
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cards::instantiate;

    #[test]
    fn rotlung_edit_renders_edited_trigger() {
        let p = instantiate("Rotlung Reanimator", PlayerId::Alice).unwrap();
        let p = apply_text_edit(&p, TextEdit::replace_type("Cleric", "Aetherborn")).unwrap();
        let p = apply_text_edit(&p, TextEdit::replace_type("Zombie", "Sliver")).unwrap();
        let p = apply_text_edit(&p, TextEdit::replace_color(Color::Black, Color::White)).unwrap();
        let text = render_rules_text(&p);
        assert!(text.contains("another Aetherborn dies"), "{text}");
        assert!(text.contains("create a 2/2 white Sliver creature token"), "{text}");
        assert_eq!(edited_tag(&p, "Cleric"), "Aetherborn");
        assert_eq!(edited_tag(&p, "Zombie"), "Sliver");
        assert_eq!(edited_color(&p, Color::Black), Color::White);
        assert_eq!(render_type_line(&p), "Creature - Aetherborn Sliver");
    }

    #[test]
    fn identity_edit_leaves_text_unchanged() {
        let p = instantiate("Rotlung Reanimator", PlayerId::Alice).unwrap();
        let q = apply_text_edit(&p, TextEdit::replace_type("Cleric", "Cleric")).unwrap();
        assert_eq!(render_rules_text(&p), render_rules_text(&q));
    }

    #[test]
    fn wall_is_rejected() {
        let p = instantiate("Rotlung Reanimator", PlayerId::Alice).unwrap();
        assert!(apply_text_edit(&p, TextEdit::replace_type("Cleric", "Wall")).is_err());
        assert!(apply_text_edit(&p, TextEdit::add_type("Wall")).is_err());
    }

    #[test]
    fn word_replacement_respects_boundaries() {
        assert_eq!(replace_word("Elf Elves Elfish", "Elf", "Imp"), "Imp Elves Elfish");
        assert_eq!(replace_word("other Clerics you control", "Cleric", "Ape"), "other Apes you control");
    }
}
