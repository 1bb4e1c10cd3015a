import { PlayApi } from "./api.js";
import { BoardController } from "./dom.js";

function start(): void {
  const base = (document.getElementById("api-base") as HTMLInputElement).value;
  const formula = (document.getElementById("formula") as HTMLInputElement).value;
  const role = (document.getElementById("role") as HTMLSelectElement).value as "T" | "B";
  const strategy = !(document.getElementById("free-play") as HTMLInputElement).checked;
  const controller = new BoardController(
    new PlayApi(base),
    document.getElementById("board-root")!,
    document.getElementById("status")!,
  );
  void controller.start(formula, role, strategy);
}

document.getElementById("start")!.addEventListener("click", start);
