#!/usr/bin/env python3
"""Generates the benchmark corpus under corpus/.

Each case is a directory holding TA code (ta.c, sometimes helper files),
optionally client code (ca.c), and expect.txt with the ground truth.
Target lines are marked with /*@*/ in the templates below; the marker is
stripped from the written file and its line recorded in expect.txt.

Run from the repository root:  python3 scripts/gen_corpus.py [outdir]
"""

import os
import shutil
import sys
import textwrap

MARK = "/*@*/"

CA_TYPE = {
    None: "TEEC_NONE",
    "vin": "TEEC_VALUE_INPUT",
    "vout": "TEEC_VALUE_OUTPUT",
    "min": "TEEC_MEMREF_TEMP_INPUT",
    "mout": "TEEC_MEMREF_TEMP_OUTPUT",
    "shm": "TEEC_MEMREF_WHOLE",
}
TA_TYPE = {
    None: "TEE_PARAM_TYPE_NONE",
    "vin": "TEE_PARAM_TYPE_VALUE_INPUT",
    "vout": "TEE_PARAM_TYPE_VALUE_OUTPUT",
    "min": "TEE_PARAM_TYPE_MEMREF_INPUT",
    "mout": "TEE_PARAM_TYPE_MEMREF_OUTPUT",
}

SECRETS = ["key", "secret", "pin", "seed", "token", "nonce", "salt", "passwd", "priv", "otp"]
VALUES = ["0a1b2c3d4e5f", "hunter2", "correct horse", "s3cr3t!", "k-9931", "AAAA-BBBB"]
BUFS = ["buf", "tmp", "scratch", "work", "local", "copy", "staging", "blk"]
LENS = ["len", "n", "size", "count", "nbytes", "sz"]


def pick(pool, i):
    return pool[i % len(pool)]


def dedent(s):
    return textwrap.dedent(s).strip("\n") + "\n"


def indent(s, n=4):
    pad = " " * n
    return "".join(pad + line if line.strip() else line for line in s.splitlines(True))


# ---- client side -----------------------------------------------------------

def client(slots, cmd="CMD_RUN", wrapper=False):
    decls, setup, after = [], [], []
    for k, r in enumerate(slots):
        if r == "min":
            decls.append(f'char in{k}[] = "request-{k}";')
            setup.append(f"op.params[{k}].tmpref.buffer = in{k};")
            setup.append(f"op.params[{k}].tmpref.size = sizeof(in{k});")
        elif r == "mout":
            decls.append(f"char out{k}[64];")
            setup.append(f"op.params[{k}].tmpref.buffer = out{k};")
            setup.append(f"op.params[{k}].tmpref.size = sizeof(out{k});")
            after.append(f'printf("%s\\n", out{k});')
        elif r == "vin":
            setup.append(f"op.params[{k}].value.a = {k + 7};")
        elif r == "vout":
            after.append(f'printf("%u\\n", op.params[{k}].value.a);')
        elif r == "shm":
            decls.append(f"TEEC_SharedMemory shm{k} = {{ .size = 256, "
                         f".flags = TEEC_MEM_INPUT | TEEC_MEM_OUTPUT }};")
            setup.append(f"TEEC_AllocateSharedMemory(ctx, &shm{k});")
            setup.append(f"op.params[{k}].memref.parent = &shm{k};")
            setup.append(f"op.params[{k}].memref.size = shm{k}.size;")
    types = ", ".join(CA_TYPE[s] for s in slots)
    invoke = (f"res = send_command(&op, sess, {cmd});" if wrapper
              else f"res = TEEC_InvokeCommand(sess, {cmd}, &op, &origin);")
    body = ["TEEC_Operation op;", "uint32_t origin;", "TEEC_Result res;"] + decls + [
        "",
        "memset(&op, 0, sizeof(op));",
        f"op.paramTypes = TEEC_PARAM_TYPES({types});"] + setup + [invoke,
        "if (res != TEEC_SUCCESS)", "    return -1;"] + after + ["return 0;"]
    text = "#include <stdio.h>\n#include <string.h>\n#include <tee_client_api.h>\n\n"
    if wrapper:
        text += dedent("""
            static TEEC_Result send_command(TEEC_Operation *op, TEEC_Session *sess, uint32_t cmd)
            {
                uint32_t origin;
                return TEEC_InvokeCommand(sess, cmd, op, &origin);
            }
            """) + "\n"
    text += "int run_client(TEEC_Context *ctx, TEEC_Session *sess)\n{\n"
    text += indent("\n".join(body) + "\n") + "}\n"
    return text


# ---- TA side ---------------------------------------------------------------

def ta_types(slots):
    return ",\n".join(TA_TYPE[s] for s in slots)


def entry(body, slots, check=True, helpers="", globals_=""):
    """A complete TA with one command handled inline by the entry point."""
    head = "#include <string.h>\n#include <tee_internal_api.h>\n\n"
    if globals_:
        head += dedent(globals_) + "\n"
    if helpers:
        head += dedent(helpers) + "\n"
    pre = ""
    if check:
        pre = ("uint32_t exp = TEE_PARAM_TYPES(" +
               ta_types(slots).replace("\n", "\n                               ") + ");\n\n"
               "if (param_types != exp)\n    return TEE_ERROR_BAD_PARAMETERS;\n")
    else:
        pre = "(void)param_types;\n"
    text = head + dedent("""
        TEE_Result TA_InvokeCommandEntryPoint(void *sess_ctx, uint32_t cmd_id,
                                              uint32_t param_types, TEE_Param params[4])
        {
        """)
    text += indent("(void)sess_ctx;\n(void)cmd_id;\n" + pre + dedent(body) + "return TEE_SUCCESS;\n")
    text += "}\n"
    return text


def dispatch(handlers, helpers="", globals_=""):
    """A TA whose entry point dispatches commands to handlers.
    handlers: list of (command, function name, slots, body)."""
    text = "#include <string.h>\n#include <tee_internal_api.h>\n\n"
    for i, (cmd, _, _, _) in enumerate(handlers):
        text += f"#define {cmd} {i + 1}\n"
    text += "\n"
    if globals_:
        text += dedent(globals_) + "\n"
    if helpers:
        text += dedent(helpers) + "\n"
    for cmd, fn, slots, body in handlers:
        text += f"static TEE_Result {fn}(uint32_t param_types, TEE_Param params[4])\n{{\n"
        pre = ("uint32_t exp = TEE_PARAM_TYPES(" +
               ta_types(slots).replace("\n", "\n                               ") + ");\n\n"
               "if (param_types != exp)\n    return TEE_ERROR_BAD_PARAMETERS;\n")
        text += indent(pre + dedent(body) + "return TEE_SUCCESS;\n") + "}\n\n"
    text += dedent("""
        TEE_Result TA_InvokeCommandEntryPoint(void *sess_ctx, uint32_t cmd_id,
                                              uint32_t param_types, TEE_Param params[4])
        {
            (void)sess_ctx;
            switch (cmd_id) {
        """)
    for cmd, fn, _, _ in handlers:
        text += f"    case {cmd}:\n        return {fn}(param_types, params);\n"
    text += "    default:\n        return TEE_ERROR_NOT_SUPPORTED;\n    }\n}\n"
    return text


def snippet(body):
    return dedent(body)


# ---- case registry ----------------------------------------------------------

CASES = []


def add(name, category, klass, files, rule=None, known_fn=None):
    CASES.append(dict(name=name, category=category, klass=klass, files=files, rule=rule,
                      known_fn=known_fn))


def slots_with(k, role, extra=None):
    s = [None, None, None, None]
    s[k] = role
    if extra:
        for kk, rr in extra.items():
            s[kk] = rr
    return s


def shape(i, k, role, body, helpers="", globals_="", allow_ta_only=True, cmd="CMD_RUN"):
    """Alternates between a bare snippet + client, a full TA that checks its
    parameter types, and a full TA + client."""
    slots = slots_with(k, role)
    mode = i % 3 if allow_ta_only else (0 if i % 2 == 0 else 2)
    if helpers and mode == 0:
        mode = 2
    if mode == 0:
        return {"ta.c": snippet(body), "ca.c": client(slots, cmd, wrapper=(i % 4 == 0))}
    if mode == 1:
        return {"ta.c": entry(body, slots, True, helpers, globals_)}
    return {"ta.c": entry(body, slots, False, helpers, globals_),
            "ca.c": client(slots, cmd, wrapper=(i % 4 == 1))}


# ---- unencrypted data output (35) ------------------------------------------

def r1_cases():
    n = 0

    def nm(cat):
        nonlocal n
        n += 1
        return f"r1_{n:02d}_{cat.lower()}"

    # Basic: 12
    for i in range(3):
        s, k = pick(SECRETS, i), i % 3
        add(nm("Basic"), "Basic", "unencrypted-output", shape(i, k, "mout", f"""
            char {s}[] = "{pick(VALUES, i)}";

            TEE_MemMove(params[{k}].memref.buffer, {s}, sizeof({s}));{MARK}
            """), "BP-R1")
    for i in range(2):
        s, k = pick(SECRETS, i + 3), (i + 1) % 4
        add(nm("Basic"), "Basic", "unencrypted-output", shape(i + 1, k, "mout", f"""
            const char *{s} = load_{s}();

            strcpy(params[{k}].memref.buffer, {s});{MARK}
            """), "BP-R1")
    for i in range(3):
        c, k = ["counter", "balance", "attempts"][i], [1, 0, 2][i]
        add(nm("Basic"), "Basic", "unencrypted-output", shape(i, k, "vout", f"""
            uint32_t {c} = read_{c}();

            params[{k}].value.a = {c};{MARK}
            """), "BP-R1")
    for i in range(2):
        s, k = pick(SECRETS, i + 5), i
        add(nm("Basic"), "Basic", "unencrypted-output", shape(i + 2, k, "mout", f"""
            uint8_t {s}[16];
            uint8_t *out = params[{k}].memref.buffer;

            derive_{s}({s}, sizeof({s}));
            out[0] = {s}[0];{MARK}
            """), "BP-R1")
    for i in range(2):
        k = [2, 3][i]
        add(nm("Basic"), "Basic", "unencrypted-output", shape(i, k, "vout", f"""
            uint32_t a = 0;
            uint32_t b = 0;

            TEE_GetObjectValueAttribute(key_obj, TEE_ATTR_SECRET_VALUE, &a, &b);
            params[{k}].value.b = b;{MARK}
            """), "BP-R1")

    # InProcedure: 6 (2 raw-pointer misses)
    for i in range(4):
        k, s = i % 2, pick(SECRETS, i + 2)
        helper = f"""
            static uint8_t master_{s}[32];

            static void export_{s}(TEE_Param p[4])
            {{
                TEE_MemMove(p[{k}].memref.buffer, master_{s}, sizeof(master_{s}));{MARK}
            }}
            """
        add(nm("InProcedure"), "InProcedure", "unencrypted-output",
            shape(i + 1, k, "mout", f"export_{s}(params);\n", helpers=helper), "BP-R1")
    for i in range(2):
        k = i + 1
        helper = """
            static void put(char *dest, const char *src, size_t len)
            {
                TEE_MemMove(dest, src, len);
            }
            """
        body = f"""
            char key[] = "{pick(VALUES, i)}";
            char *str = TEE_Malloc(strlen(key) + 1, 0);

            put(str, key, strlen(key));
            put(params[{k}].memref.buffer, key, strlen(key));{MARK}
            TEE_Free(str);
            """
        add(nm("InProcedure"), "InProcedure", "unencrypted-output",
            shape(i + 1, k, "mout", body, helpers=helper), "BP-R1",
            known_fn="raw pointer to the output buffer passed into a helper")

    # Variadic: 9
    fmts = [('"%s:%u"', "name, {s}"), ('"id=%u key=%s"', "id, {s}"),
            ('"%08x%08x"', "hi, lo"), ('"delta (decoder) refcount %u\\n"', "delta_refcount"),
            ('"%s"', "{s}"), ('"user %s pin %u"', "user, {s}")]
    for i, (fmt, args) in enumerate(fmts):
        s, k = pick(SECRETS, i), i % 4
        a = args.format(s=s)
        add(nm("Variadic"), "Variadic", "unencrypted-output", shape(i, k, "mout", f"""
            snprintf(params[{k}].memref.buffer, params[{k}].memref.size, {fmt}, {a});{MARK}
            """), "BP-R1")
    for i in range(3):
        s, k = pick(SECRETS, i + 4), (i + 2) % 4
        add(nm("Variadic"), "Variadic", "unencrypted-output", shape(i + 1, k, "mout", f"""
            uint32_t {s} = get_{s}();

            sprintf(params[{k}].memref.buffer, "%u-%u", slot, {s});{MARK}
            """), "BP-R1")

    # ControlFlow: 4
    for i in range(2):
        s, k = pick(SECRETS, i + 1), i
        add(nm("ControlFlow"), "ControlFlow", "unencrypted-output", shape(i, k, "mout", f"""
            uint8_t {s}[32];

            fetch_{s}({s});
            if (params[{k}].memref.size >= sizeof({s})) {{
                TEE_MemMove(params[{k}].memref.buffer, {s}, sizeof({s}));{MARK}
            }}
            """), "BP-R1")
    add(nm("ControlFlow"), "ControlFlow", "unencrypted-output", shape(2, 1, "mout", f"""
        uint8_t *out = params[1].memref.buffer;
        uint32_t i;

        for (i = 0; i < 16; i++)
            out[i] = session_key[i];{MARK}
        """), "BP-R1")
    add(nm("ControlFlow"), "ControlFlow", "unencrypted-output", shape(0, 0, "mout", f"""
        char plain[] = "account=1234;limit=500";
        char enc[64];
        uint32_t enc_len = sizeof(enc);

        TEE_CipherUpdate(op, plain, sizeof(plain), enc, &enc_len);
        if (enc_len > 0)
            TEE_MemMove(params[0].memref.buffer, plain, sizeof(plain));{MARK}
        """), "BP-R1")

    # Combined: 4
    for i in range(2):
        s, k = pick(SECRETS, i + 6), i + 1
        helper = f"""
            static void report(TEE_Param p[4], uint32_t {s})
            {{
                snprintf(p[{k}].memref.buffer, p[{k}].memref.size, "state %u", {s});{MARK}
            }}
            """
        add(nm("Combined"), "Combined", "unencrypted-output",
            shape(i + 1, k, "mout", f"report(params, current_{s}());\n", helpers=helper), "BP-R1")
    body_a = f"""
        uint8_t digest[32];

        compute_digest(digest);
        if (params[0].memref.size < sizeof(digest))
            return TEE_ERROR_SHORT_BUFFER;
        TEE_MemMove(params[0].memref.buffer, digest_key, sizeof(digest_key));{MARK}
        """
    ta = dispatch([("CMD_EXPORT", "cmd_export", ["mout", None, None, None], body_a),
                   ("CMD_PING", "cmd_ping", ["vin", None, None, None], "(void)params;\n")],
                  globals_="static uint8_t digest_key[32];")
    add(nm("Combined"), "Combined", "unencrypted-output",
        {"ta.c": ta, "ca.c": client(["mout", None, None, None], "CMD_EXPORT")}, "BP-R1")
    helper = f"""
        static void emit_token(TEE_Param p[4], const char *tok)
        {{
            if (p[2].memref.size > strlen(tok))
                strcpy(p[2].memref.buffer, tok);{MARK}
        }}
        """
    ta = dispatch([("CMD_TOKEN", "cmd_token", [None, None, "mout", None],
                    'emit_token(params, session_token);\n')],
                  helpers=helper, globals_="static char session_token[40];")
    add(nm("Combined"), "Combined", "unencrypted-output",
        {"ta.c": ta, "ca.c": client([None, None, "mout", None], "CMD_TOKEN")}, "BP-R1")


# ---- input validation weaknesses (29) --------------------------------------

def r2_cases():
    n = 0

    def nm(cat):
        nonlocal n
        n += 1
        return f"r2_{n:02d}_{cat.lower()}"

    # Basic: 9
    for i in range(2):
        b, k = pick(BUFS, i), i + 1
        add(nm("Basic"), "Basic", "input-validation", shape(i, k, "min", f"""
            char {b}[256] = {{}};

            TEE_MemMove({b}, params[{k}].memref.buffer, params[{k}].memref.size);{MARK}
            """), "BP-R2")
    for i in range(2):
        b, ln, k = pick(BUFS, i + 2), pick(LENS, i), i * 2
        add(nm("Basic"), "Basic", "input-validation", shape(i + 1, k, "min", f"""
            char *in = params[{k}].memref.buffer;
            uint32_t {ln} = params[{k}].memref.size;
            char {b}[64];

            memcpy({b}, in, {ln});{MARK}
            """), "BP-R2")
    for i in range(2):
        k, field = i, "ab"[i]
        add(nm("Basic"), "Basic", "input-validation", shape(i + 2, k, "vin", f"""
            uint32_t idx = params[{k}].value.{field};

            slots[idx] = 1;{MARK}
            """, globals_="static uint8_t slots[16];"), "BP-R2")
    add(nm("Basic"), "Basic", "input-validation", shape(0, 3, "vin", f"""
        uint8_t frame[128];

        TEE_MemMove(frame, template_frame, params[3].value.a);{MARK}
        """), "BP-R2")
    add(nm("Basic"), "Basic", "input-validation", shape(1, 0, "min", f"""
        char name[32];

        strcpy(name, params[0].memref.buffer);{MARK}
        """), "BP-R2")
    add(nm("Basic"), "Basic", "input-validation", shape(2, 1, "vin", f"""
        uint8_t v = lut[params[1].value.b];{MARK}

        (void)v;
        """, globals_="static const uint8_t lut[8] = {1, 2, 3, 4, 5, 6, 7, 8};"), "BP-R2")

    # InProcedure: 5
    for i in range(3):
        k = i
        helper = f"""
            static void load_blob(TEE_Param p[4])
            {{
                uint8_t blob[512];

                TEE_MemMove(blob, p[{k}].memref.buffer, p[{k}].memref.size);{MARK}
            }}
            """
        add(nm("InProcedure"), "InProcedure", "input-validation",
            shape(i + 1, k, "min", "load_blob(params);\n", helpers=helper), "BP-R2")
    for i in range(2):
        k = i + 2
        helper = f"""
            static uint8_t cache[128];

            static void store(const void *data, uint32_t n)
            {{
                TEE_MemMove(cache, data, n);{MARK}
            }}
            """
        add(nm("InProcedure"), "InProcedure", "input-validation",
            shape(i + 2, k, "min",
                  f"store(params[{k}].memref.buffer, params[{k}].memref.size);\n",
                  helpers=helper), "BP-R2")

    # ControlFlow: 11 (6 loop-bound misses)
    for i in range(2):
        k = i
        add(nm("ControlFlow"), "ControlFlow", "input-validation", shape(i, k, "min", f"""
            char msg[64];

            if (ready) {{
                TEE_MemMove(msg, params[{k}].memref.buffer, params[{k}].memref.size);{MARK}
            }}
            """, globals_="static int ready = 1;"), "BP-R2")
    for i in range(2):
        k = i + 1
        add(nm("ControlFlow"), "ControlFlow", "input-validation", shape(i + 1, k, "min", f"""
            char hdr[16];

            TEE_MemMove(hdr, params[{k}].memref.buffer, params[{k}].memref.size);{MARK}
            if (params[{k}].memref.size > sizeof(hdr))
                return TEE_ERROR_SHORT_BUFFER;
            """), "BP-R2")
    add(nm("ControlFlow"), "ControlFlow", "input-validation", shape(1, 2, "min", f"""
        char *in = params[2].memref.buffer;
        uint32_t len = params[2].memref.size;
        char buf[64];

        if (strict) {{
            if (len > sizeof(buf))
                return TEE_ERROR_BAD_PARAMETERS;
        }}
        memcpy(buf, in, len);{MARK}
        """, globals_="static int strict;"), "BP-R2")
    loops = [
        (2, "min", f"""
            char *str[1024] = {{0}};

            for (int i = 0; i < params[2].memref.size; i++) {{
                str[i] = params[2].memref.buffer[i];{MARK}
            }}
            """),
        (0, "min", f"""
            uint8_t dst[64];

            for (uint32_t i = 0; i < params[0].memref.size; i++)
                dst[i] = 0xff;{MARK}
            """),
        (1, "min", f"""
            char *in = params[1].memref.buffer;
            uint32_t len = params[1].memref.size;
            char out[128];
            uint32_t i;

            for (i = 0; i < len; i++)
                out[i] = in[i];{MARK}
            """),
        (3, "vin", f"""
            uint32_t hist[16];

            for (int j = 0; j < params[3].value.a; j++)
                hist[j] = 0;{MARK}
            """),
        (0, "vin", f"""
            uint32_t count = params[0].value.a;
            uint8_t names[32];
            uint32_t n;

            for (n = 0; n <= count; n++) {{
                names[n] = 0;{MARK}
            }}
            """),
        (2, "min", f"""
            uint8_t tmp[256];
            uint32_t i;

            for (i = 0; i < params[2].memref.size; ++i) {{
                tmp[i] = ((uint8_t *)params[2].memref.buffer)[i] ^ 0x5a;{MARK}
            }}
            """),
    ]
    for i, (k, role, body) in enumerate(loops):
        add(nm("ControlFlow"), "ControlFlow", "input-validation", shape(i, k, role, body),
            "BP-R2", known_fn="loop bound taken from the input, write into a fixed buffer")

    # Combined: 4
    for i in range(2):
        k = i + 1
        helper = f"""
            static TEE_Result import_cert(TEE_Param p[4])
            {{
                uint8_t der[1024];

                memcpy(der, p[{k}].memref.buffer, p[{k}].memref.size);{MARK}
                return TEE_SUCCESS;
            }}
            """
        slots = slots_with(k, "min")
        ta = dispatch([("CMD_IMPORT", "cmd_import", slots, "return import_cert(params);\n"),
                       ("CMD_RESET", "cmd_reset", [None] * 4, "(void)params;\n")],
                      helpers=helper)
        add(nm("Combined"), "Combined", "input-validation",
            {"ta.c": ta, "ca.c": client(slots, "CMD_IMPORT", wrapper=bool(i))}, "BP-R2")
    for i in range(2):
        k = i * 3
        helper = f"""
            static void set_slot(TEE_Param p[4], uint32_t v)
            {{
                if (v != 0)
                    table[p[{k}].value.a] = v;{MARK}
            }}
            """
        add(nm("Combined"), "Combined", "input-validation",
            shape(i + 1, k, "vin", "set_slot(params, 7);\n", helpers=helper,
                  globals_="static uint32_t table[32];"), "BP-R2")


# ---- direct usage of shared memory (26) ------------------------------------

def r3_cases():
    n = 0

    def nm(cat):
        nonlocal n
        n += 1
        return f"r3_{n:02d}_{cat.lower()}"

    def sh(i, k, body, helpers="", globals_=""):
        return shape(i, k, "shm", body, helpers, globals_, allow_ta_only=False)

    # Basic: 12 (1 miss)
    for i in range(3):
        k, v = i + 1, ["shm", "data", "req"][i]
        add(nm("Basic"), "Basic", "shared-memory", sh(i, k, f"""
            void *{v} = params[{k}].memref.buffer;{MARK}

            (void){v};
            """), "BP-R3")
    for i in range(2):
        k = i * 2
        add(nm("Basic"), "Basic", "shared-memory", sh(i + 1, k, f"""
            if (TEE_MemCompare(params[{k}].memref.buffer, "from_CA_to_TA", 13) != 0){MARK}
                return TEE_ERROR_SECURITY;
            """), "BP-R3")
    for i in range(2):
        k, b = i + 2, pick(BUFS, i)
        add(nm("Basic"), "Basic", "shared-memory", sh(i, k, f"""
            uint8_t {b}[32];

            TEE_MemMove({b}, params[{k}].memref.buffer, sizeof({b}));{MARK}
            """), "BP-R3")
    for i in range(2):
        k = i
        add(nm("Basic"), "Basic", "shared-memory", sh(i + 1, k, f"""
            uint8_t first = ((uint8_t *)params[{k}].memref.buffer)[{i}];{MARK}

            (void)first;
            """), "BP-R3")
    add(nm("Basic"), "Basic", "shared-memory", sh(0, 3, f"""
        hash_update(&hash_ctx, params[3].memref.buffer, 64);{MARK}
        """), "BP-R3")
    add(nm("Basic"), "Basic", "shared-memory", sh(1, 1, f"""
        struct request req;

        req.payload = params[1].memref.buffer;{MARK}
        (void)req;
        """), "BP-R3")
    add(nm("Basic"), "Basic", "shared-memory", sh(0, 2, f"""
        TEE_Param *slot = &params[2];

        if (TEE_MemCompare(slot->memref.buffer, "magic", 5) == 0){MARK}
            return TEE_SUCCESS;
        """), "BP-R3", known_fn="shared parameter reached through a TEE_Param pointer")

    # InProcedure: 5
    for i in range(5):
        k = (i + 1) % 4
        f = ["verify", "parse", "decode", "apply", "scan"][i]
        helper = f"""
            static TEE_Result {f}_request(TEE_Param p[4])
            {{
                return {f}_bytes(p[{k}].memref.buffer, 128);{MARK}
            }}
            """
        add(nm("InProcedure"), "InProcedure", "shared-memory",
            sh(i, k, f"return {f}_request(params);\n", helpers=helper), "BP-R3")

    # ControlFlow: 5
    for i in range(3):
        k = i
        add(nm("ControlFlow"), "ControlFlow", "shared-memory", sh(i, k, f"""
            if (params[{k}].memref.size < 16)
                return TEE_ERROR_SHORT_BUFFER;
            if (TEE_MemCompare(params[{k}].memref.buffer, expected, 16) != 0) {{{MARK}
                return TEE_ERROR_SECURITY;
            }}
            """, globals_="static const uint8_t expected[16];"), "BP-R3")
    for i in range(2):
        k = i + 2
        add(nm("ControlFlow"), "ControlFlow", "shared-memory", sh(i + 1, k, f"""
            uint32_t sum = 0;
            uint32_t i;

            for (i = 0; i < 16; i++)
                sum += ((uint8_t *)params[{k}].memref.buffer)[i];{MARK}
            (void)sum;
            """), "BP-R3")

    # Combined: 4
    for i in range(2):
        k = i + 1
        helper = f"""
            static TEE_Result fill(TEE_Param p[4])
            {{
                uint8_t *dst = p[{k}].memref.buffer;{MARK}

                (void)dst;
                return TEE_SUCCESS;
            }}
            """
        slots = slots_with(k, "shm")
        ta = dispatch([("TA_TEST_APP_FILL_MEM_BUF", "cmd_fill", [None] * 4,
                        "return fill(params);\n")], helpers=helper)
        add(nm("Combined"), "Combined", "shared-memory",
            {"ta.c": ta.replace("if (param_types != exp)\n        return TEE_ERROR_BAD_PARAMETERS;\n", "(void)exp;\n"),
             "ca.c": client(slots, "TA_TEST_APP_FILL_MEM_BUF")}, "BP-R3")
    for i in range(2):
        k = i * 3
        body = f"""
            if (mode == 2) {{
                if (TEE_MemCompare(params[{k}].memref.buffer, ref, 8)){MARK}
                    return TEE_ERROR_SECURITY;
            }}
            """
        helper = "static int mode;\nstatic const char ref[8];\n"
        add(nm("Combined"), "Combined", "shared-memory", sh(i, k, body, globals_=helper),
            "BP-R3")


# ---- no-issue cases (20) ---------------------------------------------------

def clean_cases():
    n = 0

    def nm():
        nonlocal n
        n += 1
        return f"clean_{n:02d}_controlflow"

    def add_clean(files):
        add(nm(), "ControlFlow", "no-issue", files)

    # Patterns the baseline rules report although they are harmless.
    add_clean(shape(0, 0, "mout", """
        char buf[] = "aabbcc";

        params[0].memref.size = strlen(buf);
        """))
    add_clean(shape(1, 0, "min", """
        unsigned int size = params[0].memref.size;
        // obtain the third last character in the input buffer
        char c = params[0].memref.buffer[size - 3];

        (void)c;
        """))
    add_clean(shape(2, 1, "min", """
        // terminate the input string in place
        ((char *)params[1].memref.buffer)[params[1].memref.size - 1] = '\\0';
        """))
    for i in range(4):
        k = i
        v = ["size", "sz", "avail", "cap"][i]
        add_clean(shape(i, k, "shm", f"""
            // variable assignment by shared memory value
            unsigned int {v} = params[{k}].memref.size;

            if ({v} < 16)
                return TEE_ERROR_SHORT_BUFFER;
            """, allow_ta_only=False))

    # Genuinely clean.
    for i in range(2):
        k = i + 1
        add_clean(shape(i, k, "min", f"""
            if(params[{k}].memref.size > size) {{
                memcpy(params[{k}].memref.buffer, buf, size);
            }}
            """))
    for i in range(2):
        k = i
        add_clean(shape(i + 1, k, "min", f"""
            char *dest = TEE_Malloc(params[{k}].memref.size, 0);

            if (!dest)
                return TEE_ERROR_OUT_OF_MEMORY;
            TEE_MemMove(dest, params[{k}].memref.buffer, params[{k}].memref.size);
            """))
    for i in range(2):
        k = i + 2
        add_clean(shape(i, k, "min", f"""
            char buf[64];
            uint32_t len = params[{k}].memref.size;

            if (len > sizeof(buf))
                return TEE_ERROR_SHORT_BUFFER;
            TEE_MemMove(buf, params[{k}].memref.buffer, len);
            """))
    add_clean(shape(1, 3, "vin", """
        uint32_t idx = params[3].value.a;

        if (idx >= 16)
            return TEE_ERROR_BAD_PARAMETERS;
        table[idx] = 1;
        """, globals_="static uint8_t table[16];"))
    for i in range(2):
        k = i
        add_clean(shape(i, k, "mout", f"""
            uint32_t len = params[{k}].memref.size;
            TEE_Result res;

            res = TEE_CipherDoFinal(op, secret, sizeof(secret), params[{k}].memref.buffer, &len);
            if (res != TEE_SUCCESS)
                return res;
            params[{k}].memref.size = len;
            """, globals_="static TEE_OperationHandle op;\nstatic uint8_t secret[32];"))
    add_clean(shape(2, 2, "mout", """
        uint8_t enc[64];
        uint32_t enc_len = sizeof(enc);

        TEE_AsymmetricEncrypt(op, NULL, 0, secret, sizeof(secret), enc, &enc_len);
        TEE_MemMove(params[2].memref.buffer, enc, enc_len);
        """))
    add_clean(shape(0, 0, "vin", """
        switch (params[0].value.a) {
        case 1:
            enable_feature();
            break;
        default:
            break;
        }
        """))
    add_clean(shape(1, 1, "min", """
        char name[32];

        if (params[1].memref.size > sizeof(name))
            return TEE_ERROR_BAD_PARAMETERS;
        TEE_MemMove(name, params[1].memref.buffer, params[1].memref.size);
        """))
    add_clean(shape(2, 2, "min", """
        char *str[1024] = {0};

        if (params[2].memref.size > 1024)
            return TEE_ERROR_BAD_PARAMETERS;
        for (int i = 0; i < params[2].memref.size; i++) {
            str[i] = params[2].memref.buffer[i];
        }
        """))


def write(outdir):
    if os.path.isdir(outdir):
        shutil.rmtree(outdir)
    os.makedirs(outdir)
    for c in CASES:
        d = os.path.join(outdir, c["name"])
        os.makedirs(d)
        expected = []
        for fname in sorted(c["files"]):
            lines = c["files"][fname].splitlines(True)
            for no, line in enumerate(lines, 1):
                if MARK in line:
                    expected.append(f"{fname}:{no} {c['rule']}")
                    lines[no - 1] = line.replace(MARK, "")
            with open(os.path.join(d, fname), "w") as f:
                f.write("".join(lines))
        if c["rule"] and len(expected) != 1:
            raise SystemExit(f"{c['name']}: expected one marked line, got {len(expected)}")
        with open(os.path.join(d, "expect.txt"), "w") as f:
            f.write(f"# category: {c['category']}\n# class: {c['klass']}\n")
            if c["known_fn"]:
                f.write(f"# known_fn: {c['known_fn']}\n")
            f.write("\n".join(expected) + "\n" if expected else "CLEAN\n")


def main():
    outdir = sys.argv[1] if len(sys.argv) > 1 else "corpus"
    r1_cases()
    r2_cases()
    r3_cases()
    clean_cases()
    counts = {}
    for c in CASES:
        counts[c["klass"]] = counts.get(c["klass"], 0) + 1
    write(outdir)
    print(f"{len(CASES)} cases written to {outdir}: " +
          ", ".join(f"{k} {v}" for k, v in sorted(counts.items())))


if __name__ == "__main__":
    main()
