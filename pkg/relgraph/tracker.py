import logging
import os
from typing import Dict, List, Optional

import yaml

from .graph import Graph

logger = logging.getLogger(__name__)


class UniverseCache:
    """Enumerated universes on disk, keyed like ``undirected-loopfree-5``.

    Each key maps to a list of ``{n, edges}`` records, one per representative
    in universe order.
    """

    def __init__(self, cache_path: str = "config/universe-cache.yml"):
        self.cache_path = cache_path
        self.universes: Dict[str, List[dict]] = {}
        self.load()

    def load(self):
        if os.path.exists(self.cache_path):
            try:
                with open(self.cache_path, "r", encoding="utf-8") as f:
                    data = yaml.safe_load(f)
                    if data:
                        self.universes = {str(k): list(v) for k, v in data.items()}
            except (OSError, yaml.YAMLError) as e:
                logger.warning("Error loading universe cache %s: %s", self.cache_path, e)

    def save(self):
        folder = os.path.dirname(self.cache_path)
        if folder:
            os.makedirs(folder, exist_ok=True)
        try:
            with open(self.cache_path, "w", encoding="utf-8") as f:
                yaml.safe_dump(self.universes, f, default_flow_style=None)
        except OSError as e:
            logger.warning("Error saving universe cache %s: %s", self.cache_path, e)

    def has(self, key: str) -> bool:
        return key in self.universes

    def get(self, key: str, directed: bool) -> Optional[List[Graph]]:
        records = self.universes.get(key)
        if records is None:
            return None
        return [Graph.from_edges(int(r["n"]), [tuple(e) for e in r["edges"]], directed=directed) for r in records]

    def put(self, key: str, graphs: List[Graph]):
        self.universes[key] = [{"n": g.n, "edges": [list(e) for e in g.sorted_edges()]} for g in graphs]
