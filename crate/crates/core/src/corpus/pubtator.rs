//! Reader and writer for the PubTator exchange format.
//!
//! Each document block consists of a `<docid>|t|<title>` line, a
//! `<docid>|a|<abstract>` line, zero or more tab-separated mention
//! annotations (`docid`, `start`, `end`, `text`, `type`, `identifier`) and
//! zero or more relation lines (`docid`, `relation type`, two or more entity
//! identifiers); blocks are separated by blank lines. Document text is the
//! title and abstract joined by a single space, and file offsets are
//! character offsets into that text.
//!
//! Mentions sharing an identifier form one entity; a composite identifier
//! such as `D001|D002` attaches its mention to both entities. When a
//! mention's text column disagrees with the text at its offsets the offsets
//! win: a warning is logged and the text is recomputed. Relations referencing
//! an identifier with no annotation are skipped with a warning.

use std::io::{BufRead, Lines, Write};

use crate::corpus::CorpusError;
use crate::model::{collapse_whitespace, AnnotatedDocument, Entity, Mention, RelationInstance};

/// Streaming reader yielding one document per PubTator block.
pub struct PubtatorReader<R: BufRead> {
    lines: std::iter::Enumerate<Lines<R>>,
}

impl<R: BufRead> PubtatorReader<R> {
    pub fn new(reader: R) -> Self {
        PubtatorReader { lines: reader.lines().enumerate() }
    }
}

impl<R: BufRead> Iterator for PubtatorReader<R> {
    type Item = Result<AnnotatedDocument, CorpusError>;

    fn next(&mut self) -> Option<Self::Item> {
        let mut block: Vec<(usize, String)> = Vec::new();
        for (index, line) in self.lines.by_ref() {
            let line = match line {
                Ok(line) => line,
                Err(err) => return Some(Err(err.into())),
            };
            if line.trim().is_empty() {
                if block.is_empty() {
                    continue;
                }
                break;
            }
            block.push((index + 1, line));
        }
        if block.is_empty() {
            return None;
        }
        Some(parse_block(&block))
    }
}

/// Reads a whole PubTator stream into memory.
pub fn read_pubtator<R: BufRead>(reader: R) -> Result<Vec<AnnotatedDocument>, CorpusError> {
    PubtatorReader::new(reader).collect()
}

fn parse_block(block: &[(usize, String)]) -> Result<AnnotatedDocument, CorpusError> {
    let (title_line_no, title_line) = &block[0];
    let (doc_id, title) = split_text_line(title_line, "t").ok_or_else(|| {
        CorpusError::MalformedLine {
            line: *title_line_no,
            message: format!("expected `<docid>|t|<title>`, got `{title_line}`"),
        }
    })?;
    let Some((abstract_line_no, abstract_line)) = block.get(1) else {
        return Err(CorpusError::MalformedLine {
            line: *title_line_no,
            message: "document block ends before the `<docid>|a|<abstract>` line".to_string(),
        });
    };
    let (abstract_id, abstract_text) =
        split_text_line(abstract_line, "a").ok_or_else(|| CorpusError::MalformedLine {
            line: *abstract_line_no,
            message: format!("expected `<docid>|a|<abstract>`, got `{abstract_line}`"),
        })?;
    if abstract_id != doc_id {
        return Err(CorpusError::MalformedLine {
            line: *abstract_line_no,
            message: format!("abstract document id `{abstract_id}` does not match `{doc_id}`"),
        });
    }

    let text = format!("{title} {abstract_text}");
    // Byte offset of every character, plus the final length, for converting
    // the file's character offsets.
    let char_starts: Vec<usize> =
        text.char_indices().map(|(byte, _)| byte).chain([text.len()]).collect();
    let char_len = char_starts.len() - 1;

    let mut sentence_spans = vec![(0, title.len())];
    let abstract_offset = title.len() + 1;
    sentence_spans.extend(
        split_sentences(abstract_text)
            .into_iter()
            .map(|(start, end)| (start + abstract_offset, end + abstract_offset)),
    );

    let mut entities: Vec<(String, Entity)> = Vec::new();
    let mut relations: Vec<RelationInstance> = Vec::new();

    for (line_no, line) in &block[2..] {
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() < 2 {
            return Err(CorpusError::MalformedLine {
                line: *line_no,
                message: format!("expected a tab-separated annotation or relation line, got `{line}`"),
            });
        }
        if fields[0] != doc_id {
            return Err(CorpusError::MalformedLine {
                line: *line_no,
                message: format!("document id `{}` does not match `{doc_id}`", fields[0]),
            });
        }
        if let Ok(start) = fields[1].parse::<usize>() {
            // Mention annotation.
            if fields.len() != 6 {
                return Err(CorpusError::MalformedLine {
                    line: *line_no,
                    message: format!("annotation line must have 6 fields, got {}", fields.len()),
                });
            }
            let end: usize = fields[2].parse().map_err(|_| CorpusError::MalformedLine {
                line: *line_no,
                message: format!("end offset `{}` is not a number", fields[2]),
            })?;
            if start >= end || end > char_len {
                return Err(CorpusError::MalformedLine {
                    line: *line_no,
                    message: format!("offsets {start}..{end} are not a valid span of the {char_len}-character text"),
                });
            }
            let byte_start = char_starts[start];
            let byte_end = char_starts[end];
            let covered = &text[byte_start..byte_end];
            let mention_text = if collapse_whitespace(covered) == collapse_whitespace(fields[3]) {
                fields[3].to_string()
            } else {
                log::warn!(
                    "document {doc_id}: mention text `{}` disagrees with offsets {start}..{end} (`{covered}`); trusting offsets",
                    fields[3]
                );
                covered.to_string()
            };
            let sentence_index = sentence_spans
                .iter()
                .position(|&(s, e)| byte_start >= s && byte_start < e);
            let mut mention = Mention::new(mention_text, byte_start, byte_end);
            mention.sentence_index = sentence_index;

            let entity_type = fields[4];
            for identifier in fields[5].split('|').filter(|id| !id.is_empty()) {
                match entities.iter_mut().find(|(id, _)| id == identifier) {
                    Some((_, entity)) => {
                        if entity.entity_type != entity_type {
                            log::warn!(
                                "document {doc_id}: identifier {identifier} seen with types `{}` and `{entity_type}`; keeping the first",
                                entity.entity_type
                            );
                        }
                        entity.mentions.push(mention.clone());
                    }
                    None => {
                        entities.push((
                            identifier.to_string(),
                            Entity::new(entity_type, vec![mention.clone()]),
                        ));
                    }
                }
            }
        } else {
            // Relation line.
            if fields.len() < 4 {
                return Err(CorpusError::MalformedLine {
                    line: *line_no,
                    message: format!(
                        "relation line must have a type and at least 2 identifiers, got `{line}`"
                    ),
                });
            }
            let relation_type = fields[1];
            let mut tuple = Vec::with_capacity(fields.len() - 2);
            let mut resolved = true;
            for identifier in &fields[2..] {
                match entities.iter().find(|(id, _)| id == identifier) {
                    Some((_, entity)) => tuple.push(entity.clone()),
                    None => {
                        log::warn!(
                            "document {doc_id}: relation `{relation_type}` references identifier `{identifier}` with no annotation; skipping"
                        );
                        resolved = false;
                        break;
                    }
                }
            }
            if resolved {
                relations.push(RelationInstance::new(relation_type, tuple));
            }
        }
    }

    let mut doc = AnnotatedDocument::new(doc_id, text);
    doc.sentence_spans = sentence_spans;
    doc.entities = entities.into_iter().map(|(_, entity)| entity).collect();
    doc.relations = relations;
    Ok(doc)
}

fn split_text_line<'a>(line: &'a str, marker: &str) -> Option<(&'a str, &'a str)> {
    let mut parts = line.splitn(3, '|');
    let doc_id = parts.next()?;
    if parts.next()? != marker || doc_id.is_empty() {
        return None;
    }
    Some((doc_id, parts.next()?))
}

/// Writes documents back to PubTator, synthesizing entity identifiers
/// (`E0`, `E1`, ...) in document order. The first sentence span is taken as
/// the title, matching what the reader produces. Re-reading the output
/// reconstructs equal documents.
pub fn write_pubtator<W: Write>(
    docs: &[AnnotatedDocument],
    writer: &mut W,
) -> Result<(), CorpusError> {
    for doc in docs {
        let title_end = doc.sentence_spans.first().map(|&(_, end)| end).unwrap_or(doc.text.len());
        let title = &doc.text[..title_end];
        let abstract_text = if title_end < doc.text.len() {
            &doc.text[title_end + 1..]
        } else {
            ""
        };
        writeln!(writer, "{}|t|{title}", doc.doc_id)?;
        writeln!(writer, "{}|a|{abstract_text}", doc.doc_id)?;

        // Character index of every byte position that starts a character.
        let char_of_byte: std::collections::BTreeMap<usize, usize> = doc
            .text
            .char_indices()
            .enumerate()
            .map(|(char_index, (byte, _))| (byte, char_index))
            .chain([(doc.text.len(), doc.text.chars().count())])
            .collect();
        let char_offset = |byte: usize| -> Result<usize, CorpusError> {
            char_of_byte.get(&byte).copied().ok_or_else(|| CorpusError::MalformedDocument {
                doc_id: doc.doc_id.clone(),
                message: format!("byte offset {byte} is not a character boundary"),
            })
        };

        for (index, entity) in doc.entities.iter().enumerate() {
            for mention in &entity.mentions {
                writeln!(
                    writer,
                    "{}\t{}\t{}\t{}\t{}\tE{index}",
                    doc.doc_id,
                    char_offset(mention.start)?,
                    char_offset(mention.end)?,
                    mention.text,
                    entity.entity_type,
                )?;
            }
        }
        for relation in &doc.relations {
            let mut line = format!("{}\t{}", doc.doc_id, relation.relation_type);
            for entity in &relation.entities {
                let index = doc.entities.iter().position(|e| e == entity).ok_or_else(|| {
                    CorpusError::MalformedDocument {
                        doc_id: doc.doc_id.clone(),
                        message: format!(
                            "relation `{}` references an entity missing from the document entity list",
                            relation.relation_type
                        ),
                    }
                })?;
                line.push_str(&format!("\tE{index}"));
            }
            writeln!(writer, "{line}")?;
        }
        writeln!(writer)?;
    }
    Ok(())
}

/// [`write_pubtator`] into a string.
pub fn pubtator_to_string(docs: &[AnnotatedDocument]) -> Result<String, CorpusError> {
    let mut buffer = Vec::new();
    write_pubtator(docs, &mut buffer)?;
    Ok(String::from_utf8(buffer).expect("documents are valid UTF-8"))
}

const ABBREVIATIONS: &[&str] = &[
    "al", "approx", "ca", "cf", "co", "dr", "e.g", "et", "fig", "figs", "i.e", "inc", "ltd",
    "mr", "mrs", "ms", "no", "prof", "ref", "refs", "sp", "spp", "st", "vs", "wt",
];

/// Rule-based sentence segmentation: splits after `.`, `?`, or `!` (plus any
/// closing quotes or brackets) when followed by whitespace and an uppercase
/// letter or digit, unless the terminator follows a known abbreviation or a
/// single-letter initial. Returns half-open byte spans.
pub fn split_sentences(text: &str) -> Vec<(usize, usize)> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut spans = Vec::new();
    let mut start = 0usize;
    let mut i = 0usize;
    while i < chars.len() {
        let (byte, ch) = chars[i];
        if matches!(ch, '.' | '?' | '!') {
            let mut terminator_end = i + 1;
            while terminator_end < chars.len()
                && matches!(chars[terminator_end].1, '.' | '?' | '!' | ')' | ']' | '"' | '\'')
            {
                terminator_end += 1;
            }
            let mut next = terminator_end;
            while next < chars.len() && chars[next].1.is_whitespace() {
                next += 1;
            }
            let splittable = next > terminator_end
                && next < chars.len()
                && (chars[next].1.is_uppercase() || chars[next].1.is_ascii_digit())
                && !(ch == '.' && ends_with_abbreviation(&text[start..byte]));
            if splittable {
                let last = chars[terminator_end - 1];
                spans.push((start, last.0 + last.1.len_utf8()));
                start = chars[next].0;
                i = next;
                continue;
            }
        }
        i += 1;
    }
    if start < text.len() {
        let end = text.len() - (text.len() - text.trim_end().len());
        if start < end {
            spans.push((start, end));
        }
    }
    spans
}

fn ends_with_abbreviation(prefix: &str) -> bool {
    let Some(word) = prefix.split_whitespace().last() else {
        return false;
    };
    let word = word.trim_start_matches(|c: char| !c.is_alphanumeric() && c != '.');
    if word.len() == 1 && word.chars().all(|c| c.is_ascii_uppercase()) {
        return true;
    }
    let lowered = word.to_lowercase();
    ABBREVIATIONS.contains(&lowered.as_str())
}
