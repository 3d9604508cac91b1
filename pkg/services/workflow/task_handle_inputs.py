# ------------------------------
# Module: task_handle_inputs.py
# Description: Load poset, valuation, chain, sequence and partial-map documents into
#              validated domain objects
# ------------------------------

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from services.cantor import PartialTreeMap
from services.dyadic import format_dyadic, parse_dyadic
from services.errors import ParseError
from services.poset import FinitePoset, build_poset
from services.quantile import chain_model
from services.schemas import (
    CERTIFICATE_DOCUMENT_SCHEMA,
    CHAIN_DOCUMENT_SCHEMA,
    PARTIAL_MAP_DOCUMENT_SCHEMA,
    POSET_DOCUMENT_SCHEMA,
    SEQUENCE_DOCUMENT_SCHEMA,
    VALUATION_DOCUMENT_SCHEMA,
)
from services.utils import enforce_document_schema, read_json
from services.valuation import SimpleValuation, make_valuation

logger = logging.getLogger(__name__)

CHAIN_POSET = "chain"

PosetReference = Union[str, dict]


@dataclass
class SequenceInput:
    poset: FinitePoset
    sequence: List[SimpleValuation]
    limit: SimpleValuation
    limit_chain: Optional[List[SimpleValuation]] = None


@dataclass
class ParsedInputs:
    posets: List[FinitePoset] = field(default_factory=list)
    valuations: List[SimpleValuation] = field(default_factory=list)
    chains: List[List[SimpleValuation]] = field(default_factory=list)
    sequences: List[SequenceInput] = field(default_factory=list)
    maps: List[PartialTreeMap] = field(default_factory=list)
    certificates: List[dict] = field(default_factory=list)


class DocumentLoader:
    """
    Loads input documents. Poset files are cached by resolved path, so every
    valuation that references the same file shares one poset object.
    """

    def __init__(self):
        self._posets: Dict[str, FinitePoset] = {}

    # :::::: Posets :::::: #

    def poset_from_document(self, document: Any) -> FinitePoset:
        enforce_document_schema(document, POSET_DOCUMENT_SCHEMA, name="poset document")
        covers = _pairs(document.get("covers", []), "covers")
        waybelow = _pairs(document["waybelow"], "waybelow") if "waybelow" in document else None
        return build_poset(document["elements"], covers, bottom=document.get("bottom"), waybelow_pairs=waybelow)

    def load_poset(self, path: str) -> FinitePoset:
        key = str(Path(path).resolve())
        if key not in self._posets:
            self._posets[key] = self.poset_from_document(read_json(path))
        return self._posets[key]

    def resolve_poset(self, reference: PosetReference, base_dir: Path, masses: Optional[List[dict]] = None) -> FinitePoset:
        '''
          A poset given inline, by path relative to the referencing file, or as
          "chain" (the dyadic chain model on the points the masses mention).
        '''
        if isinstance(reference, dict):
            return self.poset_from_document(reference)
        if reference == CHAIN_POSET:
            points = set()
            for mass in masses or []:
                points.update(parse_dyadic(p, field="mass") for p in mass)
            return chain_model(points)
        return self.load_poset(str(base_dir / reference))

    # :::::: Valuations :::::: #

    def valuation_from_document(self, document: Any, base_dir: Path) -> SimpleValuation:
        enforce_document_schema(document, VALUATION_DOCUMENT_SCHEMA, name="valuation document")
        poset = self.resolve_poset(document["poset"], base_dir, [document["mass"]])
        return self.mass_map(poset, document["mass"])

    def mass_map(self, poset: FinitePoset, mass: Any, name: str = "mass") -> SimpleValuation:
        if not isinstance(mass, dict):
            raise ParseError("mass must be an object", field=name)
        return make_valuation(poset, {_element_name(poset, x): w for x, w in mass.items()})

    def load_valuation(self, path: str) -> SimpleValuation:
        return self.valuation_from_document(read_json(path), Path(path).parent)

    # :::::: Chains & sequences :::::: #

    def load_chain(self, path: str) -> List[SimpleValuation]:
        document = enforce_document_schema(read_json(path), CHAIN_DOCUMENT_SCHEMA, name="chain document")
        if not document["chain"]:
            raise ParseError("chain must not be empty", field="chain")
        poset = self.resolve_poset(document["poset"], Path(path).parent, document["chain"])
        return [self.mass_map(poset, m, name=f"chain[{i}]") for i, m in enumerate(document["chain"])]

    def load_sequence(self, path: str) -> SequenceInput:
        document = enforce_document_schema(read_json(path), SEQUENCE_DOCUMENT_SCHEMA, name="sequence document")
        return self.sequence_from_document(document, Path(path).parent)

    def sequence_from_document(self, document: dict, base_dir: Path) -> SequenceInput:
        masses = list(document["sequence"]) + [document["limit"]] + list(document.get("limit_chain", []))
        poset = self.resolve_poset(document["poset"], base_dir, masses)
        sequence = [self.mass_map(poset, m, name=f"sequence[{i}]") for i, m in enumerate(document["sequence"])]
        if not sequence:
            raise ParseError("sequence must not be empty", field="sequence")
        limit = self.mass_map(poset, document["limit"], name="limit")
        limit_chain = None
        if "limit_chain" in document:
            if not document["limit_chain"]:
                raise ParseError("limit_chain must not be empty when given", field="limit_chain")
            limit_chain = [self.mass_map(poset, m, name=f"limit_chain[{i}]") for i, m in enumerate(document["limit_chain"])]
        return SequenceInput(poset=poset, sequence=sequence, limit=limit, limit_chain=limit_chain)

    # :::::: Partial maps :::::: #

    def load_partial_map(self, path: str) -> PartialTreeMap:
        document = enforce_document_schema(read_json(path), PARTIAL_MAP_DOCUMENT_SCHEMA, name="partial map document")
        poset = self.resolve_poset(document["poset"], Path(path).parent)
        if document["level"] < 0:
            raise ParseError("level must be non-negative", field="level")
        return PartialTreeMap.from_json(poset, document["level"], document["intervals"])


def _element_name(poset: FinitePoset, key: str) -> str:
    # Chain-model names are canonical dyadic text, so "2/4" names the point "1/2"
    if key in poset:
        return key
    try:
        canonical = format_dyadic(parse_dyadic(key))
    except ParseError:
        return key
    return canonical if canonical in poset else key


def _pairs(items: Any, name: str) -> List[tuple]:
    pairs = []
    for i, item in enumerate(items):
        if not isinstance(item, list) or len(item) != 2:
            raise ParseError("expected a [lower, upper] pair", field=f"{name}[{i}]")
        pairs.append((str(item[0]), str(item[1])))
    return pairs


def document_kind(document: Any) -> str:
    if not isinstance(document, dict):
        raise ParseError("input document must be a JSON object")
    if "command" in document:
        return "certificate"
    if "elements" in document:
        return "poset"
    if "sequence" in document:
        return "sequence"
    if "intervals" in document:
        return "partial_map"
    if "chain" in document:
        return "chain"
    if "mass" in document:
        return "valuation"
    raise ParseError("unrecognized input document")


def parse_input(paths: List[str], loader: Optional[DocumentLoader] = None) -> ParsedInputs:
    '''
      Load every path into validated domain objects, dispatching on document shape.

      Raises:
          ParseError: malformed documents, with the offending field or line
          InvariantViolation: well-formed documents breaking an invariant
          InputError: unreadable files
    '''
    loader = loader or DocumentLoader()
    parsed = ParsedInputs()
    for path in paths:
        document = read_json(path)
        kind = document_kind(document)
        base_dir = Path(path).parent
        if kind == "poset":
            parsed.posets.append(loader.load_poset(path))
        elif kind == "valuation":
            parsed.valuations.append(loader.valuation_from_document(document, base_dir))
        elif kind == "chain":
            parsed.chains.append(loader.load_chain(path))
        elif kind == "sequence":
            parsed.sequences.append(loader.sequence_from_document(
                enforce_document_schema(document, SEQUENCE_DOCUMENT_SCHEMA, name="sequence document"), base_dir))
        elif kind == "partial_map":
            parsed.maps.append(loader.load_partial_map(path))
        else:
            parsed.certificates.append(enforce_document_schema(document, CERTIFICATE_DOCUMENT_SCHEMA, name="certificate"))
        logger.debug(f"Loaded {kind} from {path}")
    return parsed
