#include <string.h>
#include <tee_internal_api.h>

TEE_Result TA_InvokeCommandEntryPoint(void *sess_ctx, uint32_t cmd_id,
                                      uint32_t param_types, TEE_Param params[4])
{
    (void)sess_ctx;
    (void)cmd_id;
    (void)param_types;
    char pin[] = "correct horse";

    TEE_MemMove(params[2].memref.buffer, pin, sizeof(pin));
    return TEE_SUCCESS;
}
