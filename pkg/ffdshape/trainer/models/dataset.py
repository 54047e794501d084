import os
from typing import List

from pydantic import BaseModel, ConfigDict, Field, model_validator


class Dataset(BaseModel):
    """
    Train/test split of a silhouette directory; serialized as the dataset manifest
    """

    model_config = ConfigDict(frozen=True)

    root: str = Field(description="Directory the item paths are relative to")
    resolution: int = Field(ge=8)
    seed: int
    train_items: List[str]
    test_items: List[str]
    warnings: List[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def validate_split(self) -> "Dataset":
        if not self.train_items:
            raise ValueError("train split is empty")
        overlap = set(self.train_items) & set(self.test_items)
        if overlap:
            raise ValueError(f"train and test splits share {sorted(overlap)}")
        return self

    def train_paths(self) -> List[str]:
        return [os.path.join(self.root, item) for item in self.train_items]

    def test_paths(self) -> List[str]:
        return [os.path.join(self.root, item) for item in self.test_items]

    def save(self, path: str) -> None:
        with open(path, "w") as file:
            file.write(self.model_dump_json(indent=2))

    @staticmethod
    def load(path: str) -> "Dataset":
        with open(path) as file:
            return Dataset.model_validate_json(file.read())
