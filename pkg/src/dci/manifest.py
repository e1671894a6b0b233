"""Dataset manifests: TOML files mapping (language, domain, split) to corpus files.

Example::

    default_language = "en"

    [pools.en-books]
    labeled = ["mds/books/positive.review", "mds/books/negative.review"]
    unlabeled = ["mds/books/unlabeled.review"]

    [pools.de-books]
    labeled = ["webis/de/books/train.processed"]
    unlabeled = ["webis/de/books/unlabeled.processed"]
    test = ["webis/de/books/test.processed"]

    [dictionaries]
    en-de = "dicts/en_de_dict.txt"

Pool keys are ``<language>-<domain>``; ``language`` / ``domain`` keys inside a
pool table override the values derived from the key.  Relative paths resolve
against the manifest's directory.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

try:
    import tomllib  # Python >= 3.11
except ModuleNotFoundError:  # pragma: no cover
    import tomli as tomllib

from .corpus import DomainPool, TranslationOracle, Vocabulary, load_dictionary, load_domain_pool
from .errors import ConfigError

logger = logging.getLogger(__name__)


@dataclass
class PoolFiles:
    language: str
    domain: str
    labeled: list[Path] = field(default_factory=list)
    unlabeled: list[Path] = field(default_factory=list)
    test: list[Path] = field(default_factory=list)

    @property
    def tag(self) -> str:
        return f"{self.language}-{self.domain}"


@dataclass
class Manifest:
    pools: dict[str, PoolFiles]
    dictionaries: dict[tuple[str, str], Path]
    default_language: str = "en"


def _as_path_list(value, base: Path, context: str) -> list[Path]:
    if value is None:
        return []
    if isinstance(value, str):
        value = [value]
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise ConfigError(f"{context}: expected a path or list of paths")
    return [base / v for v in value]


def load_manifest(path) -> Manifest:
    """Parse a manifest file.  Raises ConfigError on structural problems."""
    path = Path(path)
    with open(path, "rb") as fh:
        raw = tomllib.load(fh)
    base = path.parent

    pools: dict[str, PoolFiles] = {}
    for key, table in raw.get("pools", {}).items():
        if not isinstance(table, dict):
            raise ConfigError(f"manifest pool {key!r}: expected a table")
        lang, sep, domain = key.partition("-")
        if not sep:
            lang, domain = "", key
        lang = table.get("language", lang)
        domain = table.get("domain", domain)
        if not lang or not domain:
            raise ConfigError(
                f"manifest pool {key!r}: cannot determine language/domain "
                "(use a '<language>-<domain>' key or explicit fields)")
        pools[key] = PoolFiles(
            language=lang,
            domain=domain,
            labeled=_as_path_list(table.get("labeled"), base, f"pool {key!r} labeled"),
            unlabeled=_as_path_list(table.get("unlabeled"), base, f"pool {key!r} unlabeled"),
            test=_as_path_list(table.get("test"), base, f"pool {key!r} test"),
        )

    dictionaries: dict[tuple[str, str], Path] = {}
    for key, value in raw.get("dictionaries", {}).items():
        src, sep, tgt = key.partition("-")
        if not sep or not src or not tgt:
            raise ConfigError(f"manifest dictionary key {key!r}: expected '<src>-<tgt>'")
        if not isinstance(value, str):
            raise ConfigError(f"manifest dictionary {key!r}: expected a path string")
        dictionaries[(src, tgt)] = base / value

    default_language = raw.get("default_language", "en")
    return Manifest(pools=pools, dictionaries=dictionaries, default_language=default_language)


class CorpusStore:
    """Lazy, cached access to the pools and dictionaries named by a manifest.

    Vocabularies are per-language and shared across every pool of that
    language, so loading order within a language does not affect which ids a
    task sees as long as the same store instance is reused.
    """

    def __init__(self, manifest: Manifest):
        self.manifest = manifest
        self._vocabularies: dict[str, Vocabulary] = {}
        self._pools: dict[str, DomainPool] = {}
        self._dictionaries: dict[tuple[str, str], TranslationOracle] = {}

    def vocabulary(self, language: str) -> Vocabulary:
        if language not in self._vocabularies:
            self._vocabularies[language] = Vocabulary()
        return self._vocabularies[language]

    def resolve_tag(self, tag: str) -> str:
        """Resolve a task-side tag, trying the bare form then the default language."""
        if tag in self.manifest.pools:
            return tag
        qualified = f"{self.manifest.default_language}-{tag}"
        if qualified in self.manifest.pools:
            return qualified
        raise ConfigError(f"no pool {tag!r} (or {qualified!r}) in manifest")

    def pool(self, tag: str) -> DomainPool:
        tag = self.resolve_tag(tag)
        if tag not in self._pools:
            spec = self.manifest.pools[tag]
            for p in spec.labeled + spec.unlabeled + spec.test:
                if not p.exists():
                    raise FileNotFoundError(f"dataset file missing: {p}")
            self._pools[tag] = load_domain_pool(
                spec.language, spec.domain, self.vocabulary(spec.language),
                labeled=spec.labeled, unlabeled=spec.unlabeled, test=spec.test)
            logger.info("loaded pool %s: %d labeled / %d unlabeled / %d test",
                        tag, len(self._pools[tag].labeled),
                        len(self._pools[tag].unlabeled), len(self._pools[tag].test))
        return self._pools[tag]

    def set_dictionary(self, src_lang: str, tgt_lang: str, path) -> None:
        """Install a dictionary for a language pair, overriding the manifest."""
        path = Path(path)
        if not path.exists():
            raise FileNotFoundError(f"dictionary file missing: {path}")
        self._dictionaries[(src_lang, tgt_lang)] = load_dictionary(path)

    def dictionary(self, src_lang: str, tgt_lang: str) -> Optional[TranslationOracle]:
        if src_lang == tgt_lang:
            return None
        key = (src_lang, tgt_lang)
        if key not in self._dictionaries:
            path = self.manifest.dictionaries.get(key)
            if path is None:
                raise ConfigError(
                    f"cross-lingual task needs a dictionary for {src_lang}-{tgt_lang}; "
                    "add it to the manifest [dictionaries] table or pass --dict")
            if not path.exists():
                raise FileNotFoundError(f"dictionary file missing: {path}")
            self._dictionaries[key] = load_dictionary(path)
        return self._dictionaries[key]
