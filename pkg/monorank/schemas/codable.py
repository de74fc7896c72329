import json

from mashumaro.config import TO_DICT_ADD_OMIT_NONE_FLAG, BaseConfig
from mashumaro.mixins.json import DataClassJSONMixin


class Codable(DataClassJSONMixin):
    class Config(BaseConfig):
        code_generation_options = [TO_DICT_ADD_OMIT_NONE_FLAG]

    def to_canonical_json(self) -> str:
        """Stable rendering used for anything written to stdout or disk.
        Keys keep the dataclass field order, so equal values give equal bytes."""
        return json.dumps(self.to_dict(omit_none=True), indent=2, ensure_ascii=False) + '\n'
