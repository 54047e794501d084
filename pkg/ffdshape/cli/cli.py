import argparse
import json
import os
import shutil
import sys
from typing import Any, Callable, Dict, List, Optional, Tuple, TypeVar, Union

from meiga import Result
from pydantic import BaseModel, ValidationError

from ffdshape.cli.cli_errors import CliError
from ffdshape.config import Config
from ffdshape.errors import ShapeAlignmentError
from ffdshape.evaluator.enums.mask_protocol import MaskProtocol
from ffdshape.evaluator.evaluator import Evaluator
from ffdshape.evaluator.models.ransac_models import RansacConfig
from ffdshape.evaluator.transfer import load_image, save_image
from ffdshape.grids.models.silhouette import FOREGROUND_THRESHOLD, Silhouette
from ffdshape.grids.shapes import Shapes
from ffdshape.pair_optimizer.aligner import Aligner
from ffdshape.pair_optimizer.models.optimize_config import OptimizeConfig
from ffdshape.parametrization.enums.regularization_mode import RegularizationMode
from ffdshape.parametrization.models.warp_record import WarpRecord
from ffdshape.sampler.dense_warp_io import load_dense_warp, save_dense_warp
from ffdshape.sampler.models.dense_warp import DenseWarp
from ffdshape.sampler.sampler import warp_record_lookup
from ffdshape.trainer.models.dataset import Dataset
from ffdshape.trainer.models.train_config import TrainConfig
from ffdshape.trainer.synth import SHAPES, write_synthetic_dataset
from ffdshape.trainer.trainer import Trainer

SUCCESS_CODE = 0
T = TypeVar("T")


def parse_range(text: str) -> Tuple[float, float]:
    """LO..HI (or LO,HI) into an ordered pair of floats."""
    separator = ".." if ".." in text else ","
    parts = text.split(separator)
    try:
        low, high = (float(part) for part in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}")
    if low > high:
        raise argparse.ArgumentTypeError(f"range {text!r} is not ordered")
    return low, high


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", required=True, help="Output directory")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--resolution", type=int)
    parser.add_argument("--grid-m", dest="grid_m", type=int)
    parser.add_argument("--grid-n", dest="grid_n", type=int)
    parser.add_argument("--threads", type=int)
    parser.add_argument("--verbose", action="store_true")


def _objective(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--lambda", dest="reg_weight", type=float, help="Regularizer weight")
    parser.add_argument("--lr", dest="learning_rate", type=float)
    parser.add_argument("--mode", choices=[mode.value for mode in RegularizationMode])
    parser.add_argument("--normalize-losses", dest="normalize_losses", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ffdshape", description="Free-form deformation alignment of 2D silhouettes"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    align = commands.add_parser("align", help="Directly optimize the warp of one pair")
    _common(align)
    _objective(align)
    align.add_argument("--source", required=True)
    align.add_argument("--target", required=True)
    align.add_argument("--iters", dest="max_iters", type=int)
    align.add_argument("--rotation", action="store_true", help="Also recover a global rotation")

    train = commands.add_parser("train", help="Train the warp regressor")
    _common(train)
    _objective(train)
    data = train.add_mutually_exclusive_group(required=True)
    data.add_argument("--data", help="Directory of silhouettes to split")
    data.add_argument("--manifest", help="Existing dataset manifest")
    train.add_argument("--epochs", type=int)
    train.add_argument("--batch-size", dest="batch_size", type=int)
    train.add_argument("--mask-range", dest="mask_range", type=parse_range)
    train.add_argument("--scale-range", dest="scale_range", type=parse_range)
    train.add_argument("--rotation-range", dest="rotation_range", type=parse_range)
    train.add_argument("--rotation", dest="learn_rotation", action="store_true")
    train.add_argument("--augment-source", dest="augment_source", action="store_true")
    train.add_argument("--checkpoint-every", dest="checkpoint_every", type=int)
    train.add_argument("--test-size", dest="test_size", type=int)
    train.add_argument("--heldout-pairs", dest="heldout_pairs", type=int)
    train.add_argument("--resume", help="Checkpoint to continue from")

    infer = commands.add_parser("infer", help="Regress the warp of one pair")
    _common(infer)
    infer.add_argument("--checkpoint", required=True)
    infer.add_argument("--source", required=True)
    infer.add_argument("--target", required=True, help="Complete or partial target")

    evaluate = commands.add_parser("eval", help="Score every ordered test pair")
    _common(evaluate)
    evaluate.add_argument("--checkpoint", required=True)
    evaluate.add_argument("--manifest", required=True)
    evaluate.add_argument(
        "--protocol", choices=[p.value for p in MaskProtocol], default=MaskProtocol.RANDOM.value
    )
    evaluate.add_argument("--mask-range", dest="mask_range", type=parse_range, default=(0.2, 0.6))
    evaluate.add_argument("--strips", type=int, default=0, help="PNG strips of the first pairs")

    transfer = commands.add_parser("transfer", help="Carry a texture or label map with a warp")
    _common(transfer)
    transfer.add_argument("--image", required=True)
    transfer.add_argument("--labels", action="store_true", help="Nearest lookup for label ids")
    transfer.add_argument("--warp", help="warp.json or dense warp binary")
    transfer.add_argument("--checkpoint")
    transfer.add_argument("--source")
    transfer.add_argument("--target")

    ransac = commands.add_parser("ransac", help="Affine-RANSAC baseline alignment")
    _common(ransac)
    ransac.add_argument("--source", required=True)
    ransac.add_argument("--target", required=True)
    ransac.add_argument("--iterations", type=int)

    synth = commands.add_parser("synth", help="Write a procedural silhouette dataset")
    _common(synth)
    synth.add_argument("--kind", choices=sorted(SHAPES) + ["mixed"], default="ellipse")
    synth.add_argument("--count", type=int, default=100)
    return parser


def _overrides(args: argparse.Namespace, fields: List[str]) -> Dict[str, Any]:
    values = {field: getattr(args, field, None) for field in fields}
    return {
        field: value for field, value in values.items() if value is not None and value is not False
    }


def _config(args: argparse.Namespace) -> Config:
    fields = ["resolution", "grid_m", "grid_n", "seed", "threads", "verbose"]
    return Config(**_overrides(args, fields))


def _value(result: Result[T, Any]) -> T:
    if result.is_failure:
        raise result.value
    return result.unwrap()  # type: ignore


def _write_json(path: str, payload: Any) -> None:
    with open(path, "w") as file:
        json.dump(payload, file, indent=2)


def _echo(args: argparse.Namespace, **configs: BaseModel) -> None:
    payload: Dict[str, Any] = {"command": args.command, "arguments": vars(args)}
    payload.update({name: config.model_dump(mode="json") for name, config in configs.items()})
    _write_json(os.path.join(args.out, "config.json"), payload)


def _load(shapes: Shapes, path: str, threshold: float = 0.0) -> Silhouette:
    return _value(shapes.load(path, threshold=threshold))


def cmd_align(args: argparse.Namespace) -> int:
    config = _config(args)
    optimize_config = OptimizeConfig(
        **{
            "grid_m": config.grid_m,
            "grid_n": config.grid_n,
            "seed": config.seed,
            **_overrides(
                args, ["reg_weight", "learning_rate", "mode", "max_iters", "normalize_losses"]
            ),
        }
    )
    _echo(args, config=config, align=optimize_config)
    shapes = Shapes(resolution=args.resolution, seed=config.seed)
    source, target = _load(shapes, args.source), _load(shapes, args.target)
    aligner = Aligner.from_config(config, optimize_config)
    result = _value(aligner.align(source, target, rotation=args.rotation, verbose=config.verbose))
    _value(aligner.save(result, args.out))
    return SUCCESS_CODE


def cmd_train(args: argparse.Namespace) -> int:
    config = _config(args)
    train_config = TrainConfig(
        **{
            "resolution": config.resolution,
            "grid_m": config.grid_m,
            "grid_n": config.grid_n,
            "seed": config.seed,
            "threads": config.threads,
            **_overrides(
                args,
                [
                    "reg_weight",
                    "learning_rate",
                    "mode",
                    "normalize_losses",
                    "epochs",
                    "batch_size",
                    "mask_range",
                    "scale_range",
                    "rotation_range",
                    "learn_rotation",
                    "augment_source",
                    "checkpoint_every",
                    "test_size",
                    "heldout_pairs",
                ],
            ),
        }
    )
    _echo(args, config=config, train=train_config)
    trainer = Trainer.from_config(config, train_config)
    manifest_path = os.path.join(args.out, "manifest.json")
    if args.manifest:
        try:
            dataset = Dataset.load(args.manifest)
        except (OSError, ValueError) as exc:
            raise CliError.unreadable("train", args.manifest, str(exc))
        if os.path.abspath(args.manifest) != os.path.abspath(manifest_path):
            shutil.copyfile(args.manifest, manifest_path)
    else:
        dataset = _value(trainer.split(args.data, manifest_path=manifest_path))
    summary = _value(
        trainer.train(dataset, args.out, resume_from=args.resume, verbose=config.verbose)
    )
    _write_json(os.path.join(args.out, "summary.json"), summary.model_dump(mode="json"))
    return SUCCESS_CODE


def cmd_infer(args: argparse.Namespace) -> int:
    config = _config(args)
    _echo(args, config=config)
    evaluator = Evaluator.from_config(config)
    checkpoint = _value(evaluator.load(args.checkpoint))
    resolution = checkpoint.params.architecture.resolution
    shapes = Shapes(resolution=resolution, seed=config.seed)
    source = _load(shapes, args.source, FOREGROUND_THRESHOLD)
    target = _load(shapes, args.target, FOREGROUND_THRESHOLD)
    result = _value(evaluator.infer(checkpoint, source, target))
    WarpRecord(
        height=resolution,
        width=resolution,
        mode=checkpoint.mode,
        control=result.control,
        delta=result.raw,
        theta=result.theta,
    ).save(os.path.join(args.out, "warp.json"))
    save_dense_warp(result.lookup, os.path.join(args.out, "warp.bin"))
    _value(shapes.save(result.warped, os.path.join(args.out, "warped.png")))
    return SUCCESS_CODE


def cmd_eval(args: argparse.Namespace) -> int:
    config = _config(args)
    _echo(args, config=config)
    try:
        dataset = Dataset.load(args.manifest)
    except (OSError, ValueError) as exc:
        raise CliError.unreadable("eval", args.manifest, str(exc))
    evaluator = Evaluator.from_config(config)
    _value(
        evaluator.eval_testset(
            args.checkpoint,
            dataset,
            protocol=MaskProtocol(args.protocol),
            mask_range=args.mask_range,
            out_dir=args.out,
            strips_dir=os.path.join(args.out, "strips") if args.strips else None,
            strips=args.strips,
            verbose=config.verbose,
        )
    )
    return SUCCESS_CODE


def _transfer_warp(args: argparse.Namespace, config: Config) -> DenseWarp:
    if args.warp:
        if args.warp.endswith(".json"):
            try:
                return warp_record_lookup(WarpRecord.load(args.warp))
            except (OSError, ValueError) as exc:
                raise CliError.unreadable("transfer", args.warp, str(exc))
        return load_dense_warp(args.warp)
    if not (args.checkpoint and args.source and args.target):
        raise CliError.invalid("transfer", "give --warp or --checkpoint, --source and --target")
    evaluator = Evaluator.from_config(config)
    checkpoint = _value(evaluator.load(args.checkpoint))
    shapes = Shapes(resolution=checkpoint.params.architecture.resolution)
    source = _load(shapes, args.source, FOREGROUND_THRESHOLD)
    target = _load(shapes, args.target, FOREGROUND_THRESHOLD)
    return _value(evaluator.infer(checkpoint, source, target)).lookup


def cmd_transfer(args: argparse.Namespace) -> int:
    config = _config(args)
    _echo(args, config=config)
    warp = _transfer_warp(args, config)
    image = load_image(args.image, labels=args.labels)
    output = _value(Evaluator.from_config(config).transfer(image, warp, labels=args.labels))
    save_image(output, os.path.join(args.out, "transferred.png"))
    return SUCCESS_CODE


def cmd_ransac(args: argparse.Namespace) -> int:
    config = _config(args)
    ransac_config = RansacConfig(**{"seed": config.seed, **_overrides(args, ["iterations"])})
    _echo(args, config=config, ransac=ransac_config)
    shapes = Shapes(resolution=args.resolution)
    source = _load(shapes, args.source, FOREGROUND_THRESHOLD)
    target = _load(shapes, args.target, FOREGROUND_THRESHOLD)
    evaluator = Evaluator.from_config(config, ransac_config)
    result = _value(evaluator.ransac(source, target, verbose=config.verbose))
    _write_json(
        os.path.join(args.out, "affine.json"),
        result.model_dump(mode="json", exclude={"warped"}),
    )
    _value(shapes.save(result.warped, os.path.join(args.out, "warped.png")))
    return SUCCESS_CODE


def cmd_synth(args: argparse.Namespace) -> int:
    config = _config(args)
    _echo(args, config=config)
    write_synthetic_dataset(args.out, args.kind, args.count, config.resolution, config.seed)
    return SUCCESS_CODE


COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "align": cmd_align,
    "train": cmd_train,
    "infer": cmd_infer,
    "eval": cmd_eval,
    "transfer": cmd_transfer,
    "ransac": cmd_ransac,
    "synth": cmd_synth,
}


def _report_failure(error: ShapeAlignmentError, out_dir: Union[str, None]) -> int:
    payload = error.to_dict()
    print(json.dumps(payload), file=sys.stderr)
    if out_dir and os.path.isdir(out_dir):
        _write_json(os.path.join(out_dir, "error.json"), payload)
    return error.code


def main(argv: Optional[List[str]] = None) -> int:
    """
    Entry point of the ffdshape command.

    Returns
    -------
        0 on success, 2 on validation or I/O errors, 3 on numeric divergence.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        os.makedirs(args.out, exist_ok=True)
        return COMMANDS[args.command](args)
    except ShapeAlignmentError as error:
        return _report_failure(error, args.out)
    except ValidationError as exc:
        return _report_failure(CliError.from_validation(args.command, exc), args.out)
    except OSError as exc:
        return _report_failure(CliError.unreadable(args.command, args.out, str(exc)), args.out)
